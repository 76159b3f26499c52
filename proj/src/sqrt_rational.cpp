#include "angulon/sqrt_rational.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace angulon {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;

// Factor base for kernel extraction.  Radicands are built from factorials of
// arguments bounded by the configured maximum momentum, so their odd-power
// prime content is small; anything larger enters through squared sums and is
// removed by the perfect-square step.
const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<unsigned long> p;
    const unsigned long limit = 1024;
    std::vector<bool> sieve(limit + 1, true);
    for (unsigned long i = 2; i <= limit; ++i) {
      if (!sieve[i]) continue;
      p.push_back(i);
      for (unsigned long j = i * i; j <= limit; j += i) sieve[j] = false;
    }
    return p;
  }();
  return primes;
}

}  // namespace

SqrtRational SqrtRational::of_sqrt(const mpq_class& q, int pi4_power) {
  SqrtRational r;
  int s = sgn(q);
  if (s == 0) return r;
  r.sign_ = s;
  r.radicand_ = s > 0 ? q : mpq_class(-q);
  r.radicand_.canonicalize();
  r.pi4_ = pi4_power;
  return r;
}

SqrtRational SqrtRational::of_sqrt(long num, long den, int pi4_power) {
  return of_sqrt(mpq_class(num, den), pi4_power);
}

SqrtRational SqrtRational::of_rational(const mpq_class& q) {
  return of_sqrt(mpq_class(sgn(q)) * q * q);
}

double SqrtRational::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::sqrt(radicand_.get_d() * std::pow(kFourPi, pi4_));
}

SqrtRational SqrtRational::operator-() const {
  SqrtRational r = *this;
  r.sign_ = -r.sign_;
  return r;
}

SqrtRational SqrtRational::operator*(const SqrtRational& o) const {
  SqrtRational r;
  r.sign_ = sign_ * o.sign_;
  if (r.sign_ == 0) return SqrtRational();
  r.radicand_ = radicand_ * o.radicand_;
  r.radicand_.canonicalize();
  r.pi4_ = pi4_ + o.pi4_;
  return r;
}

bool SqrtRational::operator==(const SqrtRational& o) const {
  if (sign_ != o.sign_) return false;
  if (sign_ == 0) return true;
  return pi4_ == o.pi4_ && radicand_ == o.radicand_;
}

SqrtRational::Decomposition SqrtRational::decompose() const {
  Decomposition d;
  d.pi4 = pi4_;
  if (sign_ == 0) {
    d.coeff = 0;
    d.kernel = 1;
    d.pi4 = 0;
    return d;
  }
  // sqrt(p/q) = sqrt(p*q)/q
  mpz_class m = radicand_.get_num() * radicand_.get_den();
  mpz_class square_part = 1;
  mpz_class kernel = 1;
  for (unsigned long p : small_primes()) {
    if (m == 1) break;
    unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), mpz_class(p).get_mpz_t());
    if (e == 0) continue;
    for (unsigned long i = 0; i < e / 2; ++i) square_part *= p;
    if (e % 2) kernel *= p;
  }
  if (m != 1) {
    if (!mpz_perfect_square_p(m.get_mpz_t()))
      throw std::overflow_error("SqrtRational: radicand outside factor base");
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
    square_part *= s;
  }
  d.kernel = kernel;
  d.coeff = mpq_class(sign_ * square_part, radicand_.get_den());
  d.coeff.canonicalize();
  return d;
}

void RadicalSum::add(const SqrtRational& s) {
  if (s.is_zero()) return;
  auto d = s.decompose();
  auto key = std::make_pair(d.kernel, d.pi4);
  auto& c = terms_[key];
  c += d.coeff;
  c.canonicalize();
  if (c == 0) terms_.erase(key);
}

void RadicalSum::add_scaled(const mpq_class& c, const SqrtRational& s) {
  if (c == 0) return;
  add(SqrtRational::of_rational(c) * s);
}

bool RadicalSum::is_zero() const { return terms_.empty(); }

bool RadicalSum::equals_rational(const mpq_class& q) const {
  if (q == 0) return is_zero();
  if (terms_.size() != 1) return false;
  const auto& [key, coeff] = *terms_.begin();
  return key.first == 1 && key.second == 0 && coeff == q;
}

double RadicalSum::to_double() const {
  double v = 0;
  for (const auto& [key, coeff] : terms_)
    v += coeff.get_d() * std::sqrt(key.first.get_d() * std::pow(kFourPi, key.second));
  return v;
}

}  // namespace angulon
