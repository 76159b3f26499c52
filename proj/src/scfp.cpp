#include "angulon/scfp.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "angulon/wigner.hpp"

namespace angulon::scfp {

namespace {

std::string fmt15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string key_str(const Key& k) {
  std::ostringstream os;
  os << "(lam=" << k.lam << ",n=" << k.n << ",parent=" << k.parent_L << "."
     << k.parent_mult << ",daughter=" << k.daughter_L << "." << k.daughter_mult << ")";
  return os.str();
}

}  // namespace

double Table::at(const Key& k) const {
  auto it = entries_.find(k);
  if (it == entries_.end()) throw MissingEntry("missing SCFP entry " + key_str(k));
  return it->second;
}

std::optional<double> Table::find(const Key& k) const {
  auto it = entries_.find(k);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<int, int>> Table::daughters(int lam, int n) const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [k, v] : entries_) {
    if (k.lam != lam || k.n != n) continue;
    auto d = std::make_pair(k.daughter_L, k.daughter_mult);
    if (out.empty() || out.back() != d) out.push_back(d);
  }
  return out;
}

void Table::write_csv(std::ostream& os) const {
  os << "lambda,n,parent_L,mult_p,daughter_L,mult_d,value\n";
  for (const auto& [k, v] : entries_)
    os << k.lam << ',' << k.n << ',' << k.parent_L << ',' << k.parent_mult << ','
       << k.daughter_L << ',' << k.daughter_mult << ',' << fmt15(v) << '\n';
}

Table Table::read_csv(std::istream& is) {
  Table t;
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Key k{};
    double v = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%d,%d,%d,%lf", &k.lam, &k.n, &k.parent_L,
                    &k.parent_mult, &k.daughter_L, &k.daughter_mult, &v) != 7)
      throw std::runtime_error("malformed SCFP CSV line: " + line);
    t.insert(k, v);
  }
  return t;
}

Table oracle(int lam, int n_max, const fock::CoupleOptions& opts) {
  Table t(Provenance::oracle);
  for (int n = 1; n <= n_max; ++n) {
    const auto& daughters = fock::couple_basis(lam, n, opts);
    const auto& parents = fock::couple_basis(lam, n - 1, opts);
    for (const auto& d : daughters) {
      if (d.label.M != d.label.Lambda) continue;
      for (const auto& p : parents) {
        if (p.label.M != p.label.Lambda) continue;
        if (!wigner::triangle(p.label.Lambda, lam, d.label.Lambda)) continue;
        const fock::FockVector cand = fock::parent_candidate(
            lam, n - 1, p.label.Lambda, p.label.mult, d.label.Lambda, d.label.M, opts);
        const double v = fock::inner(d.expansion, cand).real();
        t.insert(Key{lam, n, p.label.Lambda, p.label.mult, d.label.Lambda, d.label.mult},
                 v);
      }
    }
  }
  return t;
}

double recurrence_residual(const Table& t, int lam, int n, int Lp_odd, int L2, int L,
                           int mult2, int multL) {
  if (n < 2) throw std::invalid_argument("recurrence requires n >= 2");
  if (Lp_odd % 2 == 0) throw std::invalid_argument("recurrence holds for odd Lambda'");
  double sum = 0;
  for (const auto& [L1, m1] : t.daughters(lam, n - 1)) {
    const double sj = wigner::six_j_value(lam, lam, Lp_odd, L2, L, L1);
    if (sj == 0.0) continue;
    const double a = t.at(Key{lam, n - 1, L2, mult2, L1, m1});
    const double b = t.at(Key{lam, n, L1, m1, L, multL});
    sum += std::sqrt(2.0 * L1 + 1.0) * sj * a * b;
  }
  return std::abs(sum);
}

double normalization(const Table& t, int lam, int n, int L, int mult) {
  double sum = 0;
  bool found = false;
  for (const auto& [k, v] : t.entries()) {
    if (k.lam != lam || k.n != n || k.daughter_L != L || k.daughter_mult != mult)
      continue;
    sum += v * v;
    found = true;
  }
  if (!found)
    throw MissingEntry("no SCFP entries for daughter " +
                       key_str(Key{lam, n, -1, -1, L, mult}));
  return sum;
}

fock::CoeffTable coeffs_from_recursion(int lam, int n, const Table& t) {
  fock::CoeffTable prev;
  prev[fock::CoeffKey{{}, 0, 0, 0}] = 1.0;
  for (int level = 1; level <= n; ++level) {
    fock::CoeffTable cur;
    for (const auto& rho : fock::rho_multisets(lam, level)) {
      const int rho1 = rho.back();  // canonical: append the largest component
      std::vector<int> rest(rho.begin(), rho.end() - 1);
      for (const auto& [L, mult] : t.daughters(lam, level)) {
        for (int M = -L; M <= L; ++M) {
          const int Mp = M - rho1;
          fock::Amplitude c = 0;
          for (const auto& [k, scfp] : t.entries()) {
            if (k.lam != lam || k.n != level || k.daughter_L != L ||
                k.daughter_mult != mult)
              continue;
            if (std::abs(Mp) > k.parent_L) continue;
            auto it = prev.find(fock::CoeffKey{rest, k.parent_L, k.parent_mult, Mp});
            if (it == prev.end()) continue;
            c += it->second * scfp *
                 wigner::clebsch_gordan_value(k.parent_L, lam, L, Mp, rho1, M);
          }
          cur[fock::CoeffKey{rho, L, mult, M}] = c;
        }
      }
    }
    prev = std::move(cur);
  }
  return prev;
}

double ReferenceRow::value() const {
  return sign * std::sqrt(static_cast<double>(num) / static_cast<double>(den));
}

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows = {
      {1, 3, 0, 1, +1, 5, 3},  {1, 3, 2, 1, +1, 4, 9},   {2, 3, 0, 2, +1, 7, 15},
      {2, 3, 2, 2, +1, 2, 21}, {2, 3, 2, 3, +1, 5, 7},   {2, 3, 2, 4, +1, 11, 21},
      {2, 3, 4, 2, +1, 12, 35}, {2, 3, 4, 3, -1, 2, 7},  {2, 3, 4, 4, +1, 10, 21},
  };
  return rows;
}

std::string comparison_report(const Table& t) {
  std::ostringstream os;
  os << "lambda,n,parent_L,daughter_L,oracle,reference,ratio\n";
  struct Group {
    int lam, n, daughter_L;
  };
  std::vector<Group> groups;
  for (const auto& r : reference_rows()) {
    const double oracle_v =
        t.find(Key{r.lam, r.n, r.parent_L, 0, r.daughter_L, 0}).value_or(0.0);
    const double ref_v = r.value();
    os << r.lam << ',' << r.n << ',' << r.parent_L << ',' << r.daughter_L << ','
       << fmt15(oracle_v) << ',' << fmt15(ref_v) << ','
       << fmt15(ref_v != 0.0 ? oracle_v / ref_v : 0.0) << '\n';
    if (groups.empty() || groups.back().lam != r.lam || groups.back().n != r.n ||
        groups.back().daughter_L != r.daughter_L)
      groups.push_back({r.lam, r.n, r.daughter_L});
  }
  for (const auto& g : groups) {
    mpq_class ref_norm = 0;
    for (const auto& r : reference_rows())
      if (r.lam == g.lam && r.n == g.n && r.daughter_L == g.daughter_L)
        ref_norm += mpq_class(r.num, r.den);
    ref_norm.canonicalize();
    double oracle_norm = 0.0;
    try {
      oracle_norm = normalization(t, g.lam, g.n, g.daughter_L);
    } catch (const MissingEntry&) {
    }
    os << "# group lambda=" << g.lam << " n=" << g.n << " Lambda=" << g.daughter_L
       << ": oracle_norm=" << fmt15(oracle_norm) << " reference_norm=" << ref_norm;
    if (ref_norm != 1) os << " (reference group does not normalize to 1)";
    os << '\n';
  }
  return os.str();
}

}  // namespace angulon::scfp
