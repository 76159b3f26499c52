#include "angulon/model.hpp"

#include <gsl/gsl_sf_dawson.h>

#include <cmath>
#include <stdexcept>

namespace angulon::model {

namespace {

constexpr double kPi = 3.14159265358979323846;

// g(x) = F(x)(1 + 2x^2) - x with F the Dawson function; the lam = 1 radial
// moment reduces to g(x)/(4 pi^(3/2) x^2).  The direct form cancels badly for
// small x, where the series g = sum_m (-1)^(m-1) 4 m a_(m-1)/(2m+1) x^(2m+1),
// a_m = 2^m/(2m+1)!!, converges fast.
double dawson_g(double x) {
  if (x < 0.5) {
    double a_prev = 1.0;  // a_0
    double sum = 0.0;
    double x2 = x * x;
    double xpow = x * x2;  // x^3
    for (int m = 1; m < 60; ++m) {
      const double coef = 4.0 * m * a_prev / (2.0 * m + 1.0);
      const double term = (m % 2 ? coef : -coef) * xpow;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      a_prev *= 2.0 / (2.0 * m + 1.0);
      xpow *= x2;
    }
    return sum;
  }
  return gsl_sf_dawson(x) * (1.0 + 2.0 * x * x) - x;
}

}  // namespace

KGrid KGrid::geometric(double kmin, double kmax, int n) {
  if (n < 2 || kmin <= 0 || kmax <= kmin)
    throw std::invalid_argument("geometric grid needs 0 < kmin < kmax, n >= 2");
  KGrid g;
  g.points.resize(n);
  const double ratio = std::log(kmax / kmin);
  for (int i = 0; i < n; ++i)
    g.points[i] = kmin * std::exp(ratio * i / (n - 1.0));
  g.points.front() = kmin;
  g.points.back() = kmax;
  return g;
}

KGrid KGrid::linear(double kmin, double kmax, int n) {
  if (n < 2 || kmax <= kmin)
    throw std::invalid_argument("linear grid needs kmin < kmax, n >= 2");
  KGrid g;
  g.points.resize(n);
  for (int i = 0; i < n; ++i)
    g.points[i] = kmin + (kmax - kmin) * i / (n - 1.0);
  g.points.back() = kmax;
  return g;
}

KGrid KGrid::single(double k) {
  KGrid g;
  g.points = {k};
  return g;
}

AngulonModel toy_model(const ToyParams& p) {
  AngulonModel m;
  m.c = p.c;
  m.lam_max = 1;
  m.omega = [a = p.a, b = p.b](double k) { return a + b * k * k; };
  m.coupling = [u0 = p.u0, u1 = p.u1, s2 = p.sigma * p.sigma](int lam, double k) {
    if (lam > 1) return 0.0;
    const double u = lam == 0 ? u0 : u1;
    return u * k * std::exp(-k * k / s2);
  };
  return m;
}

double gaussian_bessel_moment(int lam, double k, double range) {
  if (range <= 0) throw std::invalid_argument("form-factor range must be positive");
  const double a = 1.0 / (2.0 * range * range);
  const double x = k / (2.0 * std::sqrt(a));
  switch (lam) {
    case 0:
      return std::exp(-x * x) / (4.0 * kPi);
    case 1: {
      if (k == 0.0) return 0.0;
      return dawson_g(x) / (4.0 * std::pow(kPi, 1.5) * x * x);
    }
    default:
      throw std::invalid_argument("gaussian_bessel_moment supports lam in {0, 1}");
  }
}

AngulonModel helium_model(const BogoliubovParams& p) {
  if (p.boson_mass <= 0 || p.g_bb <= 0 || p.n0 <= 0 || p.r[0] <= 0 || p.r[1] <= 0 ||
      p.u[0] < 0 || p.u[1] < 0 || p.c <= 0)
    throw std::invalid_argument("invalid Bogoliubov parameters");
  AngulonModel m;
  m.c = p.c;
  m.lam_max = 1;
  const double mb = p.boson_mass;
  const double gn = p.g_bb * p.n0;
  m.omega = [mb, gn](double k) {
    const double eps = k * k / (2.0 * mb);
    return std::sqrt(eps * (eps + 2.0 * gn));
  };
  m.coupling = [p, mb, omega = m.omega](int lam, double k) {
    if (lam > 1 || k == 0.0) return 0.0;
    const double eps = k * k / (2.0 * mb);
    const double amp =
        std::sqrt(8.0 * p.n0 * k * k * eps / (omega(k) * (2.0 * lam + 1.0)));
    return p.u[lam] * amp * gaussian_bessel_moment(lam, k, p.r[lam]);
  };
  return m;
}

MeasureConfig measure_from_density(const KGrid& grid,
                                   const std::function<double(double)>& phi) {
  if (grid.points.empty()) throw std::invalid_argument("empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid.points[i] <= grid.points[i - 1])
      throw std::invalid_argument("grid must be strictly increasing");
  MeasureConfig mc;
  mc.grid = grid;
  mc.weights.resize(grid.size());
  double total = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = phi(grid.points[i]);
    if (!(d > 0)) throw std::invalid_argument("density must be positive on every cell");
    double cell;
    if (grid.size() == 1) {
      cell = 1.0;
    } else {
      const double lo = i == 0 ? grid.points[0] : grid.points[i - 1];
      const double hi = i + 1 == grid.size() ? grid.points[i] : grid.points[i + 1];
      cell = 0.5 * (hi - lo);
    }
    mc.weights[i] = d * cell;
    total += mc.weights[i];
  }
  for (auto& w : mc.weights) w /= total;
  return mc;
}

BoundednessReport audit(const AngulonModel& m, const KGrid& grid) {
  BoundednessReport r;
  r.bounded = true;
  for (double k : grid.points) {
    const double w = m.omega(k);
    if (!std::isfinite(w) || w < 0) r.bounded = false;
    r.max_omega = std::max(r.max_omega, w);
    double s = 0;
    for (int lam = 0; lam <= m.lam_max; ++lam) {
      const double u = m.u(lam, k);
      if (!std::isfinite(u) || u < 0) r.bounded = false;
      s += std::pow(2.0 * lam + 1.0, 1.5) * u;
    }
    r.max_coupling_sum = std::max(r.max_coupling_sum, s);
  }
  return r;
}

}  // namespace angulon::model
