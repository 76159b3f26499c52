#ifndef ANGULON_SPECTRUM_HPP
#define ANGULON_SPECTRUM_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "angulon/hamiltonian.hpp"
#include "angulon/model.hpp"
#include "angulon/scfp.hpp"

namespace angulon::spectrum {

struct PoleError : std::runtime_error {
  PoleError(const std::string& msg, int J_, double k_)
      : std::runtime_error(msg), J(J_), k(k_) {}
  int J;
  double k;
};

struct PvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoBracket : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigenSolution {
  int L = 0;
  double k = 0;
  double energy = 0;
  std::vector<double> amplitudes;  // aligned with the block channel list
  double residual = 0;
};

struct BlockSpectrum {
  ham::BlockMatrix block;
  std::vector<EigenSolution> states;  // ascending energy
};

// dense symmetric eigensolve of the assembled (L, k) block
BlockSpectrum solve_block(int L, double k, const model::AngulonModel& m,
                          const ham::Truncation& t);

// Sigma_L^(1)(E, k) = sum_{J,lam} (2 lam+1) |U_{lam L}(J lam L 0 k)|^2
//                     / (c J(J+1) + omega(k) - E)
double sigma1(int L, double E, double k, const model::AngulonModel& m);

// eps_lam(E, k): two-phonon shift of the N=2 denominators
double epsilon_lambda(int lam, double E, double k, const model::AngulonModel& m,
                      const scfp::Table& t);

// N=2, L=0 self-energy integrands at fixed k
double sigma0_12(double E, double k, const model::AngulonModel& m,
                 const scfp::Table& t);
double sigma0_2(double E, double k, const model::AngulonModel& m,
                const scfp::Table& t);

// Integrand with isolated simple poles at the sign-change zeros of the
// attached denominators.
struct PvIntegrand {
  std::function<double(double)> value;
  std::vector<std::function<double(double)>> denominators;
};

struct PoleExclusion {
  double k_star;
  double window;
  double delta0;
};

struct PvResult {
  double value = 0;
  std::vector<PoleExclusion> poles;
};

struct PvOptions {
  double tol = 1e-11;           // quadrature tolerance (absolute)
  double delta_rel = 1.0 / 16;  // delta0 = window * delta_rel
};

// Symmetric-exclusion Cauchy principal value over [grid.front(), grid.back()]
// with Richardson extrapolation in the exclusion radius over
// {delta0, delta0/2, delta0/4}.  Smooth integrands reduce to plain adaptive
// quadrature.
PvResult pv_integrate(const PvIntegrand& f, const model::KGrid& grid,
                      const PvOptions& opts = {});

// plain adaptive quadrature, exposed for cross-checks
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-11);

struct SolveOptions {
  double scan_step = 0.05;  // in units of c
  double floor = -50.0;     // in units of c
  double rel_tol = 1e-12;
  PvOptions pv;
};

struct FixedPointSolution {
  double energy = 0;
  double residual = 0;  // |g(energy)|
  bool bound = false;   // false when the min{} clause returned the free value
  int n_poles = 0;
  double split_gap = 0;  // N=2 only: |S^(1,2) - S^(1) - S^(2)| of the integrals
  std::vector<ham::ChannelLabel> channels;
  model::KGrid grid;
  // coordinates[i][j]: amplitude of channels[j] at grid point i, unit norm
  // per k, vacuum amplitude positive
  std::vector<std::vector<double>> coordinates;
};

// E = c L(L+1) - pv int Sigma_L^(1)(E, k) dk on multi-point grids; a
// single-point grid carries the point-mass measure and solves the fixed-k
// scalar equation instead.
FixedPointSolution solve_n1(int L, const model::AngulonModel& m,
                            const model::MeasureConfig& mu,
                            const SolveOptions& opts = {});

// E = -pv int Sigma_0^(1,2)(E, k) dk, with the split form evaluated as a
// consistency diagnostic
FixedPointSolution solve_n2_l0(const model::AngulonModel& m,
                               const model::MeasureConfig& mu, const scfp::Table& t,
                               const SolveOptions& opts = {});

// fixed-k scalar fixed points (the single-cell semantics, also used by the
// block cross-checks)
double solve_n1_at_k(int L, double k, const model::AngulonModel& m,
                     const SolveOptions& opts = {});
double solve_n2_l0_at_k(double k, const model::AngulonModel& m, const scfp::Table& t,
                        const SolveOptions& opts = {});

struct SweepRow {
  double rho_tilde = 0;
  double energy = 0;     // N=2 fixed point
  double energy_n1 = 0;  // N=1 comparison
  double residual = 0;
  int n_poles = 0;
  bool ok = false;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// One solve per density row, parallel over rows, output ordered by rho_tilde.
// Thread count from ANGULON_THREADS when set.
SweepResult sweep_density(const model::BogoliubovParams& base,
                          const std::vector<double>& rho_tilde_log10,
                          const model::KGrid& grid, const SolveOptions& opts = {});

}  // namespace angulon::spectrum

#endif
