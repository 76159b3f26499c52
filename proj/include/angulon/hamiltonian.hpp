#ifndef ANGULON_HAMILTONIAN_HPP
#define ANGULON_HAMILTONIAN_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "angulon/model.hpp"
#include "angulon/scfp.hpp"

namespace angulon::ham {

struct Truncation {
  int n_max = 1;  // largest phonon number kept
  int lam_max = 1;
  int channel_cap = 512;
};

struct ChannelCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Basis channel of a fixed-L block.  The vacuum channel has J = L and no
// phonon labels; excited channels carry the single-lambda chain labels
// (J, lam, n, Lambda, mult).
struct ChannelLabel {
  bool vacuum = false;
  int J = 0;
  int lam = 0;
  int n = 0;
  int Lambda = 0;
  int mult = 0;

  std::string render() const;
  bool operator==(const ChannelLabel&) const = default;
};

// multiplicity of [Lambda] inside Sym^n([lam]), by weight counting
int sym_multiplicity(int lam, int n, int Lambda);
// ascending (Lambda, multiplicity count) with count > 0
std::vector<std::pair<int, int>> sym_labels(int lam, int n);

// Vacuum first, then excited channels sorted by (n, lam, Lambda, J, mult).
// J runs over the triangle range of (J, Lambda, L) restricted to the parity
// J = L + n*lam (mod 2) reachable through the spherical-harmonic couplings.
std::vector<ChannelLabel> enumerate_channels(int L, const Truncation& t);

// U_{lam L}(J' Lambda' J Lambda; k) with the coupling magnitude factored out:
// (-1)^(J+L) U (J'||Y_lam||J) {J' Lambda' L; Lambda J lam}
double u_lambda_L(int lam, int L, int Jp, int Lambdap, int J, int Lambda, double U);

// tau(lam^n Lambda' Lambda) = (-1)^Lambda' sqrt((n+1)(2 Lambda'+1))
//                             (lam^n(Lambda) lam || lam^(n+1) Lambda')
double tau(int lam, int n, int Lp, int L, const scfp::Table& t, int mult_p = 0,
           int mult = 0);
// upsilon(lam^n Lambda' Lambda) = conj tau(lam^(n-1) Lambda Lambda'), n >= 1
double upsilon(int lam, int n, int Lp, int L, const scfp::Table& t, int mult_p = 0,
               int mult = 0);
std::pair<double, double> tau_upsilon(int lam, int n, int Lp, int L,
                                      const scfp::Table& t, int mult_p = 0,
                                      int mult = 0);

struct BlockMatrix {
  int L = 0;
  double k = 0;
  std::vector<ChannelLabel> channels;
  Eigen::MatrixXd entries;
};

// Memoized oracle SCFP tables for block assembly and the solvers; the
// returned reference stays valid for the process lifetime.
const scfp::Table& shared_scfp(int lam, int n_max);
// merged table covering lam in 0..lam_max
scfp::Table scfp_for_model(int lam_max, int n_max);

// Dense real symmetric matrix of the fixed-(L, k) angulon block over the
// enumerated channels.
BlockMatrix assemble_block(int L, double k, const model::AngulonModel& m,
                           const Truncation& t);

}  // namespace angulon::ham

#endif
