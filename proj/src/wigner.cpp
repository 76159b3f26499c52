#include "angulon/wigner.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace angulon::wigner {

namespace {

class FactorialTable {
public:
  static FactorialTable& instance() {
    static FactorialTable t;
    return t;
  }

  mpz_class get(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative argument");
    {
      std::shared_lock lock(mutex_);
      if (n < static_cast<int>(values_.size())) return values_[n];
    }
    std::unique_lock lock(mutex_);
    while (static_cast<int>(values_.size()) <= n)
      values_.push_back(values_.back() * static_cast<int>(values_.size()));
    return values_[n];
  }

  void reserve(int n) { get(std::max(n, 0)); }

private:
  FactorialTable() { values_ = {1, 1}; reserve(4 * 12 + 2); }
  std::shared_mutex mutex_;
  std::deque<mpz_class> values_;
};

mpz_class fact(int n) { return FactorialTable::instance().get(n); }

// Triangle coefficient Delta^2(a,b,c) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!
mpq_class triangle_coeff(int a, int b, int c) {
  mpq_class r(fact(a + b - c) * fact(a - b + c) * fact(-a + b + c),
              fact(a + b + c + 1));
  r.canonicalize();
  return r;
}

void check_momentum(int j) {
  if (j < 0) throw std::invalid_argument("angular momentum must be nonnegative");
}

uint64_t pack6(int a, int b, int c, int d, int e, int f) {
  auto u = [](int x) { return static_cast<uint64_t>(x + 128) & 0x3ff; };
  return u(a) | u(b) << 10 | u(c) << 20 | u(d) << 30 | u(e) << 40 | u(f) << 50;
}

class Cache {
public:
  bool find(uint64_t key, SqrtRational& out) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }
  void store(uint64_t key, const SqrtRational& v) {
    std::unique_lock lock(mutex_);
    map_.emplace(key, v);
  }

private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<uint64_t, SqrtRational> map_;
};

SqrtRational clebsch_gordan_uncached(int j1, int j2, int j, int m1, int m2, int m) {
  if (m1 + m2 != m) return {};
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m) > j) return {};
  if (!triangle(j1, j2, j)) return {};

  const int zmin = std::max({0, j2 - j - m1, j1 - j + m2});
  const int zmax = std::min({j1 + j2 - j, j1 - m1, j2 + m2});
  mpq_class sum = 0;
  for (int z = zmin; z <= zmax; ++z) {
    mpq_class term(1, fact(z) * fact(j1 + j2 - j - z) * fact(j1 - m1 - z) *
                          fact(j2 + m2 - z) * fact(j - j2 + m1 + z) *
                          fact(j - j1 - m2 + z));
    if (z % 2) term = -term;
    sum += term;
  }
  if (sum == 0) return {};
  sum.canonicalize();

  mpq_class radicand = (2 * j + 1) * triangle_coeff(j1, j2, j);
  radicand *= fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) * fact(j2 - m2) *
              fact(j + m) * fact(j - m);
  radicand *= sum * sum;
  return SqrtRational::of_sqrt(mpq_class(sgn(sum)) * radicand);
}

SqrtRational six_j_uncached(int j1, int j2, int j3, int j4, int j5, int j6) {
  if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) ||
      !triangle(j4, j5, j3))
    return {};

  const int tmin = std::max({j1 + j2 + j3, j1 + j5 + j6, j4 + j2 + j6, j4 + j5 + j3});
  const int tmax = std::min({j1 + j2 + j4 + j5, j2 + j3 + j5 + j6, j3 + j1 + j6 + j4});
  mpq_class sum = 0;
  for (int t = tmin; t <= tmax; ++t) {
    mpq_class term(fact(t + 1),
                   fact(t - j1 - j2 - j3) * fact(t - j1 - j5 - j6) *
                       fact(t - j4 - j2 - j6) * fact(t - j4 - j5 - j3) *
                       fact(j1 + j2 + j4 + j5 - t) * fact(j2 + j3 + j5 + j6 - t) *
                       fact(j3 + j1 + j6 + j4 - t));
    if (t % 2) term = -term;
    sum += term;
  }
  if (sum == 0) return {};
  sum.canonicalize();

  mpq_class radicand = triangle_coeff(j1, j2, j3) * triangle_coeff(j1, j5, j6) *
                       triangle_coeff(j4, j2, j6) * triangle_coeff(j4, j5, j3);
  radicand *= sum * sum;
  return SqrtRational::of_sqrt(mpq_class(sgn(sum)) * radicand);
}

}  // namespace

void set_max_momentum(int jmax) {
  check_momentum(jmax);
  FactorialTable::instance().reserve(4 * jmax + 2);
}

bool triangle(int a, int b, int c) {
  return std::abs(a - b) <= c && c <= a + b;
}

SqrtRational clebsch_gordan(int j1, int j2, int j, int m1, int m2, int m) {
  check_momentum(j1);
  check_momentum(j2);
  check_momentum(j);
  static Cache cache;
  const uint64_t key = pack6(j1, j2, j, m1, m2, m);
  SqrtRational v;
  if (cache.find(key, v)) return v;
  v = clebsch_gordan_uncached(j1, j2, j, m1, m2, m);
  cache.store(key, v);
  return v;
}

SqrtRational six_j(int j1, int j2, int j3, int j4, int j5, int j6) {
  check_momentum(j1);
  check_momentum(j2);
  check_momentum(j3);
  check_momentum(j4);
  check_momentum(j5);
  check_momentum(j6);
  static Cache cache;
  const uint64_t key = pack6(j1, j2, j3, j4, j5, j6);
  SqrtRational v;
  if (cache.find(key, v)) return v;
  v = six_j_uncached(j1, j2, j3, j4, j5, j6);
  cache.store(key, v);
  return v;
}

SqrtRational reduced_y(int jp, int lam, int j) {
  check_momentum(jp);
  check_momentum(lam);
  check_momentum(j);
  static Cache cache;
  const uint64_t key = pack6(jp, lam, j, 0, 0, 1);
  SqrtRational v;
  if (cache.find(key, v)) return v;
  v = SqrtRational::of_sqrt(mpq_class((2 * lam + 1) * (2 * j + 1)), -1) *
      clebsch_gordan(j, lam, jp, 0, 0, 0);
  cache.store(key, v);
  return v;
}

double reduced_y_value(int jp, int lam, int j) { return reduced_y(jp, lam, j).to_double(); }

double clebsch_gordan_value(int j1, int j2, int j, int m1, int m2, int m) {
  return clebsch_gordan(j1, j2, j, m1, m2, m).to_double();
}

double six_j_value(int j1, int j2, int j3, int j4, int j5, int j6) {
  return six_j(j1, j2, j3, j4, j5, j6).to_double();
}

}  // namespace angulon::wigner
