#ifndef ANGULON_SCFP_HPP
#define ANGULON_SCFP_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "angulon/fock.hpp"

namespace angulon::scfp {

// (lam^{n-1}(parent_L) lam || lam^n daughter_L), n being the daughter
// particle number.  Multiplicity indices extend the labels where the same
// Lambda occurs more than once inside a symmetric power.
struct Key {
  int lam;
  int n;
  int parent_L;
  int parent_mult;
  int daughter_L;
  int daughter_mult;
  auto operator<=>(const Key&) const = default;
};

enum class Provenance { oracle, recurrence };

struct MissingEntry : std::out_of_range {
  using std::out_of_range::out_of_range;
};

class Table {
public:
  explicit Table(Provenance p = Provenance::oracle) : prov_(p) {}

  double at(const Key& k) const;
  std::optional<double> find(const Key& k) const;
  void insert(const Key& k, double value) { entries_[k] = value; }
  const std::map<Key, double>& entries() const { return entries_; }
  Provenance provenance() const { return prov_; }

  // distinct (daughter_L, daughter_mult) present at particle number n
  std::vector<std::pair<int, int>> daughters(int lam, int n) const;

  // header: lambda,n,parent_L,mult_p,daughter_L,mult_d,value
  void write_csv(std::ostream& os) const;
  static Table read_csv(std::istream& is);

private:
  std::map<Key, double> entries_;
  Provenance prov_;
};

// Extracts every coefficient up to n_max from the explicit coupled bases:
// SCFP = <v_{lam^n Lambda M}, {v_{lam^{n-1} Lambda'} (x)^ e_lam}_{Lambda M}>
// evaluated at M = Lambda.  The Gram-Schmidt convention makes the values
// real.
Table oracle(int lam, int n_max, const fock::CoupleOptions& opts = {});

// Residual of the odd-Lambda' recurrence
//   0 = sum_{L1} sqrt(2 L1 + 1) {lam lam Lp; L2 L L1}
//       (lam^{n-2}(L2) lam||lam^{n-1} L1)(lam^{n-1}(L1) lam||lam^n L)
double recurrence_residual(const Table& t, int lam, int n, int Lp_odd, int L2, int L,
                           int mult2 = 0, int multL = 0);

// sum_{parents} SCFP^2 for a fixed daughter; 1 for a consistent table
double normalization(const Table& t, int lam, int n, int L, int mult = 0);

// coefficient table rebuilt bottom-up from the SCFP recurrence; cross-check
// target for fock::coeff_table
fock::CoeffTable coeffs_from_recursion(int lam, int n, const Table& t);

// literature reference values, value = sign * sqrt(num/den)
struct ReferenceRow {
  int lam, n, parent_L, daughter_L;
  int sign;
  long num, den;
  double value() const;
};
const std::vector<ReferenceRow>& reference_rows();

// side-by-side oracle/reference comparison; per-group reference norms are
// printed as exact fractions
std::string comparison_report(const Table& t);

}  // namespace angulon::scfp

#endif
