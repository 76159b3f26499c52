#ifndef ANGULON_MODEL_HPP
#define ANGULON_MODEL_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace angulon::model {

struct KGrid {
  std::vector<double> points;  // strictly increasing

  static KGrid geometric(double kmin, double kmax, int n);
  static KGrid linear(double kmin, double kmax, int n);
  static KGrid single(double k);

  double front() const { return points.front(); }
  double back() const { return points.back(); }
  std::size_t size() const { return points.size(); }
};

// Rotational constant c, phonon dispersion omega(k) and angular couplings
// U_lambda(k).  Everything is expressed in units of c unless the caller
// rescales; models are immutable value objects and evaluation is pure.
struct AngulonModel {
  double c = 1.0;
  int lam_max = 1;
  std::function<double(double)> omega;
  std::function<double(int, double)> coupling;

  double u(int lam, double k) const {
    return (lam < 0 || lam > lam_max) ? 0.0 : coupling(lam, k);
  }
};

// omega(k) = a + b k^2,  U_lam(k) = u_lam k exp(-k^2/sigma^2) for lam <= 1.
// Smooth, bounded, analytic: the deterministic test fixture.
struct ToyParams {
  double c = 1.0;
  double a = 1.0;
  double b = 0.0;
  double u0 = 0.0;
  double u1 = 0.0;
  double sigma = 1.0;
};
AngulonModel toy_model(const ToyParams& p);

// Bogoliubov dispersion over a weakly interacting condensate plus
// Gaussian-form-factor angular couplings for lam in {0, 1}.
struct BogoliubovParams {
  double c = 1.0;
  double boson_mass = 1.0;
  double g_bb = 400.0;
  double n0 = 1.0;
  std::array<double, 2> u{1.75, 5.0};
  std::array<double, 2> r{1.5, 1.5};
};
AngulonModel helium_model(const BogoliubovParams& p);

// int_0^inf dr r^2 f(r) j_lam(k r) with f the 3d-normalized Gaussian of
// range r_lam; closed form, stable down to k = 0.
double gaussian_bessel_moment(int lam, double k, double range);

struct MeasureConfig {
  KGrid grid;
  std::vector<double> weights;  // positive, sum to 1
};

// Positive density phi discretized on the grid cells and normalized.
// Rejects non-positive densities: the measure must charge every cell.
MeasureConfig measure_from_density(const KGrid& grid,
                                   const std::function<double(double)>& phi);

struct BoundednessReport {
  double max_omega = 0;
  double max_coupling_sum = 0;  // max_k sum_lam (2 lam + 1)^(3/2) U_lam(k)
  bool bounded = false;
};
BoundednessReport audit(const AngulonModel& m, const KGrid& grid);

}  // namespace angulon::model

#endif
