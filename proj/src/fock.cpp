#include "angulon/fock.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "angulon/wigner.hpp"

namespace angulon::fock {

namespace {

double factorial_d(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

OccBasis::OccBasis(std::vector<Mode> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
}

OccBasis OccBasis::with(Mode m) const {
  OccBasis r = *this;
  r.modes_.insert(std::upper_bound(r.modes_.begin(), r.modes_.end(), m), m);
  return r;
}

OccBasis OccBasis::without(int index) const {
  OccBasis r = *this;
  r.modes_.erase(r.modes_.begin() + index);
  return r;
}

int OccBasis::multiplicity(Mode m) const {
  auto [lo, hi] = std::equal_range(modes_.begin(), modes_.end(), m);
  return static_cast<int>(hi - lo);
}

double OccBasis::weight() const {
  double num = 1;
  int run = 0;
  for (size_t i = 0; i < modes_.size(); ++i) {
    run = (i > 0 && modes_[i] == modes_[i - 1]) ? run + 1 : 1;
    num *= run;
  }
  return num / factorial_d(size());
}

FockVector FockVector::unit() { return basis(OccBasis()); }

FockVector FockVector::basis(const OccBasis& b) {
  FockVector v;
  v.terms_[b] = 1.0;
  return v;
}

void FockVector::accumulate(const OccBasis& b, Amplitude a) {
  if (a == 0.0) return;
  terms_[b] += a;
}

FockVector& FockVector::operator+=(const FockVector& o) {
  for (const auto& [b, a] : o.terms_) terms_[b] += a;
  truncated_ = truncated_ || o.truncated_;
  return *this;
}

FockVector FockVector::scaled(Amplitude a) const {
  FockVector r;
  r.truncated_ = truncated_;
  for (const auto& [b, amp] : terms_) r.terms_[b] = amp * a;
  return r;
}

void FockVector::prune(double eps) {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = std::abs(it->second) <= eps ? terms_.erase(it) : std::next(it);
}

double FockVector::max_imag() const {
  double m = 0;
  for (const auto& [b, a] : terms_) m = std::max(m, std::abs(a.imag()));
  return m;
}

Amplitude inner(const FockVector& u, const FockVector& v) {
  const auto& a = u.terms();
  const auto& b = v.terms();
  Amplitude s = 0;
  auto it = a.begin();
  auto jt = b.begin();
  while (it != a.end() && jt != b.end()) {
    if (it->first < jt->first) {
      ++it;
    } else if (jt->first < it->first) {
      ++jt;
    } else {
      s += std::conj(it->second) * jt->second * it->first.weight();
      ++it;
      ++jt;
    }
  }
  return s;
}

FockVector create(Mode m, const FockVector& v, int n_max) {
  FockVector r;
  r.set_truncated(v.truncated());
  for (const auto& [b, a] : v.terms()) {
    const int n = b.size();
    if (n + 1 > n_max) {
      r.set_truncated(true);
      continue;
    }
    r.accumulate(b.with(m), std::sqrt(n + 1.0) * a);
  }
  return r;
}

FockVector annihilate(Mode m, const FockVector& v) {
  FockVector r;
  r.set_truncated(v.truncated());
  for (const auto& [b, a] : v.terms()) {
    const int n = b.size();
    const int mult = b.multiplicity(m);
    if (n == 0 || mult == 0) continue;
    auto it = std::lower_bound(b.modes().begin(), b.modes().end(), m);
    const int idx = static_cast<int>(it - b.modes().begin());
    r.accumulate(b.without(idx), mult / std::sqrt(static_cast<double>(n)) * a);
  }
  return r;
}

FockVector number(const FockVector& v) {
  FockVector r;
  r.set_truncated(v.truncated());
  for (const auto& [b, a] : v.terms())
    if (b.size() > 0) r.accumulate(b, static_cast<double>(b.size()) * a);
  return r;
}

FockVector symmetric_product(const FockVector& v, Mode m) {
  FockVector r;
  r.set_truncated(v.truncated());
  for (const auto& [b, a] : v.terms()) r.accumulate(b.with(m), a);
  return r;
}

long sym_dimension(int lam, int n) {
  // C(2 lam + n, n)
  long dim = 1;
  for (int i = 1; i <= n; ++i) dim = dim * (2 * lam + i) / i;
  return dim;
}

namespace {

// candidate {v_parent (x)^ e_lam}_(Lambda M) from a parent family member
FockVector coupled_candidate(const std::vector<CoupledVector>& parents, int lam,
                             int parent_Lambda, int parent_mult, int Lambda, int M) {
  FockVector cand;
  for (const auto& p : parents) {
    if (p.label.Lambda != parent_Lambda || p.label.mult != parent_mult) continue;
    const int Mp = p.label.M;
    const int rho = M - Mp;
    if (std::abs(rho) > lam) continue;
    const double cg =
        wigner::clebsch_gordan_value(parent_Lambda, lam, Lambda, Mp, rho, M);
    if (cg == 0.0) continue;
    cand += symmetric_product(p.expansion, Mode{lam, rho}).scaled(cg);
  }
  return cand;
}

std::vector<CoupledVector> build_couple_basis(int lam, int n, const CoupleOptions& opts) {
  if (sym_dimension(lam, n) > opts.dim_limit)
    throw DimensionOverflow("symmetric power dimension exceeds configured limit");

  std::vector<CoupledVector> out;
  if (n == 0) {
    out.push_back({CoupledLabel{lam, 0, 0, 0, 0}, FockVector::unit()});
    return out;
  }
  const auto& parents = couple_basis(lam, n - 1, opts);

  // distinct parent labels in ascending (Lambda', mult') order
  std::vector<std::pair<int, int>> parent_labels;
  for (const auto& p : parents)
    if (p.label.M == p.label.Lambda)
      parent_labels.emplace_back(p.label.Lambda, p.label.mult);
  std::sort(parent_labels.begin(), parent_labels.end());

  for (int Lambda = n * lam; Lambda >= 0; --Lambda) {
    // Gram-Schmidt at highest weight; the combination is M-independent and
    // is reused verbatim at every M to keep multiplicity labels consistent.
    std::vector<std::pair<int, int>> used;
    std::vector<FockVector> basis_hw;
    std::vector<std::vector<double>> combo;  // rows: accepted vectors, cols: used parents
    for (const auto& [Lp, mp] : parent_labels) {
      if (!wigner::triangle(Lp, lam, Lambda)) continue;
      FockVector w = coupled_candidate(parents, lam, Lp, mp, Lambda, Lambda);
      used.emplace_back(Lp, mp);
      std::vector<double> coeffs(used.size(), 0.0);
      coeffs.back() = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (size_t kv = 0; kv < basis_hw.size(); ++kv) {
          const double o = inner(basis_hw[kv], w).real();
          w += basis_hw[kv].scaled(-o);
          for (size_t j = 0; j < combo[kv].size(); ++j) coeffs[j] -= o * combo[kv][j];
        }
      }
      const double norm = std::sqrt(inner(w, w).real());
      if (norm < opts.null_threshold) continue;
      for (auto& c : coeffs) c /= norm;
      basis_hw.push_back(w.scaled(1.0 / norm));
      combo.push_back(std::move(coeffs));
    }

    for (size_t mult = 0; mult < basis_hw.size(); ++mult) {
      for (int M = -Lambda; M <= Lambda; ++M) {
        FockVector v;
        if (M == Lambda) {
          v = basis_hw[mult];
        } else {
          for (size_t j = 0; j < combo[mult].size(); ++j) {
            if (combo[mult][j] == 0.0) continue;
            const auto& [Lp, mp] = used[j];
            v += coupled_candidate(parents, lam, Lp, mp, Lambda, M).scaled(combo[mult][j]);
          }
        }
        v.prune(0.0);
        out.push_back({CoupledLabel{lam, n, Lambda, static_cast<int>(mult), M}, v});
      }
    }
  }

  long total = 0;
  for (const auto& v : out)
    if (v.label.M == v.label.Lambda) total += 2 * v.label.Lambda + 1;
  if (total != sym_dimension(lam, n))
    throw std::logic_error("coupled basis does not span the symmetric power");

  std::sort(out.begin(), out.end(), [](const CoupledVector& a, const CoupledVector& b) {
    return std::tie(a.label.Lambda, a.label.mult, a.label.M) <
           std::tie(b.label.Lambda, b.label.mult, b.label.M);
  });
  return out;
}

}  // namespace

const std::vector<CoupledVector>& couple_basis(int lam, int n, const CoupleOptions& opts) {
  // recursive: build_couple_basis re-enters for the (n-1)-particle parents
  static std::recursive_mutex mutex;
  static std::map<std::pair<int, int>, std::vector<CoupledVector>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(lam, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto built = build_couple_basis(lam, n, opts);
  return cache.emplace(key, std::move(built)).first->second;
}

FockVector parent_candidate(int lam, int n_parent, int parent_Lambda, int parent_mult,
                            int Lambda, int M, const CoupleOptions& opts) {
  return coupled_candidate(couple_basis(lam, n_parent, opts), lam, parent_Lambda,
                           parent_mult, Lambda, M);
}

std::vector<std::vector<int>> rho_multisets(int lam, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int rho = start; rho <= lam; ++rho) {
      cur.push_back(rho);
      self(self, rho);
      cur.pop_back();
    }
  };
  rec(rec, -lam);
  return out;
}

CoeffTable coeff_table(int lam, int n, const CoupleOptions& opts) {
  CoeffTable table;
  const auto& family = couple_basis(lam, n, opts);
  for (const auto& rho : rho_multisets(lam, n)) {
    std::vector<Mode> modes;
    modes.reserve(rho.size());
    for (int r : rho) modes.push_back(Mode{lam, r});
    const FockVector e = FockVector::basis(OccBasis(modes));
    for (const auto& v : family) {
      const Amplitude c = inner(v.expansion, e);
      table[CoeffKey{rho, v.label.Lambda, v.label.mult, v.label.M}] = c;
    }
  }
  return table;
}

}  // namespace angulon::fock
