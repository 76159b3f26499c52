#ifndef ANGULON_FOCK_HPP
#define ANGULON_FOCK_HPP

#include <compare>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace angulon::fock {

// Single phonon mode (lam, rho) with |rho| <= lam.
struct Mode {
  int lam;
  int rho;
  auto operator<=>(const Mode&) const = default;
};

// Symmetrized basis vector: a sorted multiset of modes.  The empty multiset
// is the unit element of the symmetric tensor algebra.
class OccBasis {
public:
  OccBasis() = default;
  explicit OccBasis(std::vector<Mode> modes);

  int size() const { return static_cast<int>(modes_.size()); }
  const std::vector<Mode>& modes() const { return modes_; }
  OccBasis with(Mode m) const;
  OccBasis without(int index) const;
  int multiplicity(Mode m) const;

  // <e_B, e_B> = prod_i mult_i! / n!
  double weight() const;

  auto operator<=>(const OccBasis&) const = default;

private:
  std::vector<Mode> modes_;  // sorted
};

using Amplitude = std::complex<double>;

// Finitely supported element of the symmetric Fock space at one k.
class FockVector {
public:
  static FockVector unit();  // amplitude 1 on the empty multiset
  static FockVector basis(const OccBasis& b);

  const std::map<OccBasis, Amplitude>& terms() const { return terms_; }
  bool truncated() const { return truncated_; }
  void set_truncated(bool t) { truncated_ = t; }

  void accumulate(const OccBasis& b, Amplitude a);
  FockVector& operator+=(const FockVector& o);
  FockVector scaled(Amplitude a) const;
  void prune(double eps = 0.0);
  double max_imag() const;

private:
  std::map<OccBasis, Amplitude> terms_;
  bool truncated_ = false;
};

// Scalar product: (1/n!) sum over permutations of mode overlaps, evaluated
// in closed form for orthonormal modes.
Amplitude inner(const FockVector& u, const FockVector& v);

// b_m: n-particle component -> sqrt(n+1) e_m (x) v_n, dropping (and flagging)
// anything beyond n_max.
FockVector create(Mode m, const FockVector& v, int n_max);

// b_m^*: exact adjoint of create under the scalar product.
FockVector annihilate(Mode m, const FockVector& v);

// multiplies each n-particle component by n
FockVector number(const FockVector& v);

// v (x)^ e_m without the creation normalization factor
FockVector symmetric_product(const FockVector& v, Mode m);

struct CoupledLabel {
  int lam;
  int n;
  int Lambda;
  int mult;
  int M;
};

struct CoupledVector {
  CoupledLabel label;
  FockVector expansion;
};

struct CoupleOptions {
  long dim_limit = 20000;
  double null_threshold = 1e-10;
};

struct DimensionOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Orthonormal coupled basis of Sym^n(V_lam): candidates built by CG-coupling
// the (n-1)-particle family with one more mode, Gram-Schmidt in ascending
// (Lambda', mult') parent order at highest weight, the same combination
// reused at every M.  Results are cached.
const std::vector<CoupledVector>& couple_basis(int lam, int n,
                                               const CoupleOptions& opts = {});

// dim Sym^n(C^(2 lam + 1)) = C(2 lam + n, n)
long sym_dimension(int lam, int n);

// {v_{lam^n_parent (Lambda' mult')} (x)^ e_lam}_(Lambda M): the raw coupled
// product the recursive basis construction orthonormalizes.
FockVector parent_candidate(int lam, int n_parent, int parent_Lambda, int parent_mult,
                            int Lambda, int M, const CoupleOptions& opts = {});

struct CoeffKey {
  std::vector<int> rho;  // canonical: sorted ascending
  int Lambda;
  int mult;
  int M;
  auto operator<=>(const CoeffKey&) const = default;
};
using CoeffTable = std::map<CoeffKey, Amplitude>;

// c_rho(lam^n gamma) = <v_gamma, e_rho>, keyed by the sorted rho multiset.
CoeffTable coeff_table(int lam, int n, const CoupleOptions& opts = {});

// all multisets of size n over rho in {-lam..lam}, lexicographic
std::vector<std::vector<int>> rho_multisets(int lam, int n);

}  // namespace angulon::fock

#endif
