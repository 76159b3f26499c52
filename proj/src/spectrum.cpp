#include "angulon/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <thread>

#include "angulon/wigner.hpp"

namespace angulon::spectrum {

namespace {

// ---------- adaptive quadrature ----------

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double whole2 = left + right;
  if (depth <= 0 || std::abs(whole2 - whole) <= 15.0 * tol)
    return whole2 + (whole2 - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 52);
}

namespace {

// ---------- pole location ----------

struct LocatedPole {
  double k_star;
  bool genuine;  // false: the denominator blew up instead of crossing zero
};

// Bisection on the sign of den inside a bracketing cell.  A simple zero
// converges with |den| -> 0; a sign flip through a blowup (a pole of den
// itself) converges with |den| exploding, and is classified away.
LocatedPole locate_pole(const std::function<double(double)>& den, double lo,
                        double hi, double dlo, double dhi) {
  const double scale_end = 0.5 * (std::abs(dlo) + std::abs(dhi));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double dm = den(mid);
    if (dm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((dm < 0) == (dlo < 0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
      dhi = dm;
    }
  }
  const double k_star = 0.5 * (lo + hi);
  const double dk = std::abs(den(k_star));
  LocatedPole p{k_star, dk < scale_end};
  return p;
}

double seg_integral(const std::function<double(double)>& f, double a, double b,
                    double tol) {
  return integrate(f, a, b, tol);
}

}  // namespace

PvResult pv_integrate(const PvIntegrand& f, const model::KGrid& grid,
                      const PvOptions& opts) {
  PvResult result;
  if (grid.size() < 2) return result;
  const double a = grid.front();
  const double b = grid.back();
  const double range = b - a;

  // locate candidate poles cell by cell
  std::vector<double> poles;
  for (const auto& den : f.denominators) {
    double prev = den(grid.points[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double cur = den(grid.points[i]);
      if (prev == 0.0) {
        poles.push_back(grid.points[i - 1]);
      } else if (cur != 0.0 && (cur < 0) != (prev < 0)) {
        const auto p =
            locate_pole(den, grid.points[i - 1], grid.points[i], prev, cur);
        if (p.genuine) {
          // guard against higher-order zeros: the crossing must have a slope
          const double h = std::max(1e-9 * (grid.points[i] - grid.points[i - 1]),
                                    1e-13 * (std::abs(p.k_star) + 1.0));
          const double slope = (den(p.k_star + h) - den(p.k_star - h)) / (2.0 * h);
          if (std::abs(slope) * range <
              1e-10 * (std::abs(prev) + std::abs(cur)))
            throw PvError("non-simple pole detected near k = " +
                          std::to_string(p.k_star));
          poles.push_back(p.k_star);
        }
      }
      prev = cur;
    }
  }
  std::sort(poles.begin(), poles.end());
  poles.erase(std::unique(poles.begin(), poles.end(),
                          [&](double x, double y) {
                            return std::abs(x - y) < 1e-10 * range;
                          }),
              poles.end());

  if (poles.empty()) {
    result.value = seg_integral(f.value, a, b, opts.tol);
    return result;
  }

  // symmetric exclusion windows
  std::vector<double> windows(poles.size());
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const double left = i == 0 ? poles[i] - a : 0.5 * (poles[i] - poles[i - 1]);
    const double right =
        i + 1 == poles.size() ? b - poles[i] : 0.5 * (poles[i + 1] - poles[i]);
    if (std::min(poles[i] - a, b - poles[i]) < 1e-6 * range)
      throw PvError("pole too close to the integration boundary at k = " +
                    std::to_string(poles[i]));
    windows[i] = 0.9 * std::min({left, right, 0.05 * range});
    if (windows[i] <= 0)
      throw PvError("cannot build symmetric window around pole at k = " +
                    std::to_string(poles[i]));
  }

  const double seg_tol = opts.tol / (2.0 * poles.size() + 1.0);
  double value = 0.0;
  double cursor = a;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const double p = poles[i];
    const double w = windows[i];
    value += seg_integral(f.value, cursor, p - w, seg_tol);
    // pairwise-cancelled symmetric neighbourhood, Richardson in delta
    const double delta0 = w * opts.delta_rel;
    auto h = [&](double t) { return f.value(p + t) + f.value(p - t); };
    const double p1 = seg_integral(h, 0.25 * delta0, 0.5 * delta0, seg_tol);
    const double p2 = seg_integral(h, 0.5 * delta0, delta0, seg_tol);
    const double p3 = seg_integral(h, delta0, w, seg_tol);
    value += (8.0 * p1 + 2.0 * p2 + 3.0 * p3) / 3.0;
    result.poles.push_back({p, w, delta0});
    cursor = p + w;
  }
  value += seg_integral(f.value, cursor, b, seg_tol);
  result.value = value;
  return result;
}

// ---------- self-energy terms ----------

namespace {

constexpr double kGuard = 1e-12;

struct N1Term {
  int J;
  int lam;
  double weight;  // (2 lam + 1) |U_{lam L}(J lam L 0)|^2 at unit coupling
};

std::vector<N1Term> n1_terms(int L, const model::AngulonModel& m) {
  std::vector<N1Term> v;
  for (int lam = 0; lam <= m.lam_max; ++lam)
    for (int J = std::abs(L - lam); J <= L + lam; ++J) {
      const double coef = ham::u_lambda_L(lam, L, J, lam, L, 0, 1.0);
      if (coef == 0.0) continue;
      v.push_back({J, lam, (2.0 * lam + 1.0) * coef * coef});
    }
  return v;
}

double sigma1_eval(const std::vector<N1Term>& terms, const model::AngulonModel& m,
                   double E, double k, bool guard) {
  const double w = m.omega(k);
  double s = 0.0;
  for (const auto& t : terms) {
    const double den = m.c * t.J * (t.J + 1) + w - E;
    if (guard && std::abs(den) < kGuard * std::max(1.0, std::abs(E)))
      throw PoleError("self-energy denominator vanishes", t.J, k);
    const double u = m.u(t.lam, k);
    s += t.weight * u * u / den;
  }
  return s;
}

struct EpsSet {
  int lam = 0;
  double pref = 0;  // 2 (-1)^lam / (2 lam + 1)
  double ry0 = 0;   // (lam || Y_lam || 0)
  struct Term {
    int Lambda;
    double weight;  // (lam lam||lam^2 Lambda) (Lambda||Y_lam||lam)^2
    double scfp2;
    double ry;
  };
  std::vector<Term> terms;
};

EpsSet eps_set(int lam, const scfp::Table& t) {
  EpsSet e;
  e.lam = lam;
  e.pref = 2.0 * (lam % 2 ? -1.0 : 1.0) / (2.0 * lam + 1.0);
  e.ry0 = wigner::reduced_y_value(lam, lam, 0);
  for (int Lambda = 0; Lambda <= 2 * lam; Lambda += 2) {
    const double scfp2 = t.at(scfp::Key{lam, 2, lam, 0, Lambda, 0});
    const double ry = wigner::reduced_y_value(Lambda, lam, lam);
    e.terms.push_back({Lambda, scfp2 * ry * ry, scfp2, ry});
  }
  return e;
}

double eps_eval(const EpsSet& e, const model::AngulonModel& m, double E, double k,
                bool guard) {
  const double w2 = 2.0 * m.omega(k);
  double s = 0.0;
  for (const auto& t : e.terms) {
    const double den = m.c * t.Lambda * (t.Lambda + 1) + w2 - E;
    if (guard && std::abs(den) < kGuard * std::max(1.0, std::abs(E)))
      throw PoleError("two-phonon denominator vanishes", t.Lambda, k);
    s += t.weight / den;
  }
  const double u = m.u(e.lam, k);
  return e.pref * u * u * s;
}

std::vector<EpsSet> eps_sets(const model::AngulonModel& m, const scfp::Table& t) {
  std::vector<EpsSet> v;
  for (int lam = 0; lam <= m.lam_max; ++lam) v.push_back(eps_set(lam, t));
  return v;
}

double sigma12_eval(const std::vector<EpsSet>& sets, const model::AngulonModel& m,
                    double E, double k, bool guard) {
  const double w = m.omega(k);
  double s = 0.0;
  for (const auto& e : sets) {
    const double den =
        m.c * e.lam * (e.lam + 1) + w - E - eps_eval(e, m, E, k, guard);
    if (guard && std::abs(den) < kGuard * std::max(1.0, std::abs(E)))
      throw PoleError("shifted denominator vanishes", e.lam, k);
    const double u = m.u(e.lam, k);
    s += u * u * e.ry0 * e.ry0 / den;
  }
  return s;
}

double sigma2_eval(const std::vector<EpsSet>& sets, const model::AngulonModel& m,
                   double E, double k, bool guard) {
  const double w = m.omega(k);
  double s = 0.0;
  for (const auto& e : sets) {
    const double d0 = m.c * e.lam * (e.lam + 1) + w - E;
    const double eps = eps_eval(e, m, E, k, guard);
    const double d = d0 - eps;
    if (guard && (std::abs(d0) < kGuard * std::max(1.0, std::abs(E)) ||
                  std::abs(d) < kGuard * std::max(1.0, std::abs(E))))
      throw PoleError("self-energy denominator vanishes", e.lam, k);
    const double u = m.u(e.lam, k);
    s += u * u * eps * e.ry0 * e.ry0 / (d0 * d);
  }
  return s;
}

// ---------- downward root scan ----------

struct Refined {
  double x;
  bool is_root;  // g -> 0 at the converged point (as opposed to a pole jump)
};

template <typename G>
Refined refine_sign_change(G&& g, double lo, double glo, double hi, double ghi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double gm;
    try {
      gm = g(mid);
    } catch (const PoleError&) {
      return {mid, false};
    }
    if (gm == 0.0) return {mid, true};
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  // secant polish inside the final bracket
  double x = std::abs(glo) < std::abs(ghi) ? lo : hi;
  double gx = std::abs(glo) < std::abs(ghi) ? glo : ghi;
  if (ghi != glo) {
    const double xs = hi - ghi * (hi - lo) / (ghi - glo);
    if (xs >= lo && xs <= hi) {
      try {
        const double gs = g(xs);
        if (std::abs(gs) < std::abs(gx)) {
          x = xs;
          gx = gs;
        }
      } catch (const PoleError&) {
      }
    }
  }
  // a root shrinks |g| to rounding level; a pole blows it up
  return {x, std::abs(gx) < 1.0};
}

template <typename G>
std::optional<double> scan_down(G&& g, double start, double step, double floor) {
  bool have_prev = false;
  double prev_E = 0, prev_g = 0;
  for (double E = start; E >= floor - 1e-12 * std::abs(floor); E -= step) {
    double v;
    bool valid = true;
    try {
      v = g(E);
    } catch (const PoleError&) {
      valid = false;
    } catch (const PvError&) {
      valid = false;
    }
    if (valid) {
      if (v == 0.0) return E;
      if (have_prev && ((v < 0) != (prev_g < 0))) {
        auto r = refine_sign_change(g, E, v, prev_E, prev_g);
        if (r.is_root) return r.x;
      }
      prev_E = E;
      prev_g = v;
      have_prev = true;
    } else {
      have_prev = false;
    }
  }
  return std::nullopt;
}

std::string scan_range_str(double floor, double start) {
  std::ostringstream os;
  os << "no bound state in scan range [" << floor << ", " << start << "]";
  return os.str();
}

}  // namespace

// ---------- public self-energy evaluations ----------

double sigma1(int L, double E, double k, const model::AngulonModel& m) {
  return sigma1_eval(n1_terms(L, m), m, E, k, true);
}

double epsilon_lambda(int lam, double E, double k, const model::AngulonModel& m,
                      const scfp::Table& t) {
  return eps_eval(eps_set(lam, t), m, E, k, true);
}

double sigma0_12(double E, double k, const model::AngulonModel& m,
                 const scfp::Table& t) {
  return sigma12_eval(eps_sets(m, t), m, E, k, true);
}

double sigma0_2(double E, double k, const model::AngulonModel& m,
                const scfp::Table& t) {
  return sigma2_eval(eps_sets(m, t), m, E, k, true);
}

// ---------- block eigensolve ----------

BlockSpectrum solve_block(int L, double k, const model::AngulonModel& m,
                          const ham::Truncation& t) {
  BlockSpectrum spec;
  spec.block = ham::assemble_block(L, k, m, t);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.block.entries);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense symmetric eigensolver failed");
  const int dim = static_cast<int>(spec.block.channels.size());
  for (int i = 0; i < dim; ++i) {
    EigenSolution s;
    s.L = L;
    s.k = k;
    s.energy = es.eigenvalues()(i);
    Eigen::VectorXd v = es.eigenvectors().col(i);
    int pivot = 0;
    while (pivot < dim && v(pivot) == 0.0) ++pivot;
    if (pivot < dim && v(pivot) < 0.0) v = -v;
    s.amplitudes.assign(v.data(), v.data() + dim);
    s.residual =
        (spec.block.entries * v - s.energy * v).cwiseAbs().maxCoeff();
    spec.states.push_back(std::move(s));
  }
  return spec;
}

// ---------- fixed-point solvers ----------

FixedPointSolution solve_n1(int L, const model::AngulonModel& m,
                            const model::MeasureConfig& mu,
                            const SolveOptions& opts) {
  if (!model::audit(m, mu.grid).bounded)
    throw std::invalid_argument("model is not bounded on the working grid");
  const auto terms = n1_terms(L, m);
  const bool point = mu.grid.size() == 1;
  int last_poles = 0;

  auto Sigma = [&](double E) -> double {
    if (point) {
      last_poles = 0;
      return sigma1_eval(terms, m, E, mu.grid.points[0], true);
    }
    PvIntegrand f;
    f.value = [&terms, &m, E](double k) {
      return sigma1_eval(terms, m, E, k, false);
    };
    std::vector<int> js;
    for (const auto& t : terms)
      if (std::find(js.begin(), js.end(), t.J) == js.end()) js.push_back(t.J);
    for (int J : js)
      f.denominators.push_back(
          [&m, J, E](double k) { return m.c * J * (J + 1) + m.omega(k) - E; });
    auto r = pv_integrate(f, mu.grid, opts.pv);
    last_poles = static_cast<int>(r.poles.size());
    return r.value;
  };

  const double free_E = m.c * L * (L + 1);
  auto g = [&](double E) { return E - free_E + Sigma(E); };

  FixedPointSolution sol;
  sol.channels = ham::enumerate_channels(L, ham::Truncation{1, m.lam_max, 4096});
  sol.grid = mu.grid;

  auto root = scan_down(g, free_E, opts.scan_step * m.c, opts.floor * m.c);
  if (!root) {
    bool repulsive = false;
    try {
      repulsive = Sigma(free_E) <= 0.0;
    } catch (const PoleError&) {
    } catch (const PvError&) {
    }
    if (!repulsive) throw NoBracket(scan_range_str(opts.floor * m.c, free_E));
    sol.energy = free_E;
    sol.bound = false;
  } else {
    const double S = Sigma(*root);
    if (S <= 0.0) {
      sol.energy = free_E;
      sol.bound = false;
      sol.residual = 0.0;
    } else {
      sol.energy = *root;
      sol.bound = true;
      sol.residual = std::abs(*root - free_E + S);
      sol.n_poles = last_poles;
    }
  }

  for (double k : mu.grid.points) {
    std::vector<double> amps(sol.channels.size(), 0.0);
    amps[0] = 1.0;
    double norm2 = 1.0;
    for (std::size_t j = 1; j < sol.channels.size(); ++j) {
      const auto& ch = sol.channels[j];
      const double coef = ham::u_lambda_L(ch.lam, L, ch.J, ch.lam, L, 0, m.u(ch.lam, k));
      const double phase = ch.lam % 2 ? 1.0 : -1.0;  // (-1)^(lam+1)
      const double den = m.c * ch.J * (ch.J + 1) + m.omega(k) - sol.energy;
      const double r = phase * std::sqrt(2.0 * ch.lam + 1.0) * coef / den;
      amps[j] = r;
      norm2 += r * r;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    sol.coordinates.push_back(std::move(amps));
  }
  return sol;
}

FixedPointSolution solve_n2_l0(const model::AngulonModel& m,
                               const model::MeasureConfig& mu, const scfp::Table& t,
                               const SolveOptions& opts) {
  if (!model::audit(m, mu.grid).bounded)
    throw std::invalid_argument("model is not bounded on the working grid");
  const auto sets = eps_sets(m, t);
  const auto terms1 = n1_terms(0, m);
  const bool point = mu.grid.size() == 1;
  int last_poles = 0;

  auto add_n2_denominators = [&](PvIntegrand& f, double E) {
    for (const auto& e : sets)
      f.denominators.push_back([&m, &e, E](double k) {
        return m.c * e.lam * (e.lam + 1) + m.omega(k) - E -
               eps_eval(e, m, E, k, false);
      });
  };

  auto Sigma12 = [&](double E) -> double {
    if (point) {
      last_poles = 0;
      return sigma12_eval(sets, m, E, mu.grid.points[0], true);
    }
    PvIntegrand f;
    f.value = [&sets, &m, E](double k) { return sigma12_eval(sets, m, E, k, false); };
    add_n2_denominators(f, E);
    auto r = pv_integrate(f, mu.grid, opts.pv);
    last_poles = static_cast<int>(r.poles.size());
    return r.value;
  };

  auto g = [&](double E) { return E + Sigma12(E); };

  FixedPointSolution sol;
  sol.channels = ham::enumerate_channels(0, ham::Truncation{2, m.lam_max, 4096});
  sol.grid = mu.grid;

  auto root = scan_down(g, 0.0, opts.scan_step * m.c, opts.floor * m.c);
  if (!root) {
    bool repulsive = false;
    try {
      repulsive = Sigma12(0.0) <= 0.0;
    } catch (const PoleError&) {
    } catch (const PvError&) {
    }
    if (!repulsive) throw NoBracket(scan_range_str(opts.floor * m.c, 0.0));
    sol.energy = 0.0;
    sol.bound = false;
  } else {
    const double S = Sigma12(*root);
    if (S <= 0.0) {
      sol.energy = 0.0;
      sol.bound = false;
      sol.residual = 0.0;
    } else {
      sol.energy = *root;
      sol.bound = true;
      sol.residual = std::abs(*root + S);
      sol.n_poles = last_poles;
    }
  }

  // split-form agreement of the integrals at the solution
  {
    const double E = sol.energy;
    if (point) {
      const double k0 = mu.grid.points[0];
      sol.split_gap = std::abs(sigma12_eval(sets, m, E, k0, false) -
                               sigma1_eval(terms1, m, E, k0, false) -
                               sigma2_eval(sets, m, E, k0, false));
    } else {
      PvIntegrand f12;
      f12.value = [&](double k) { return sigma12_eval(sets, m, E, k, false); };
      add_n2_denominators(f12, E);
      PvIntegrand f1;
      f1.value = [&](double k) { return sigma1_eval(terms1, m, E, k, false); };
      for (const auto& e : sets)
        f1.denominators.push_back([&m, &e, E](double k) {
          return m.c * e.lam * (e.lam + 1) + m.omega(k) - E;
        });
      PvIntegrand f2;
      f2.value = [&](double k) { return sigma2_eval(sets, m, E, k, false); };
      f2.denominators = f1.denominators;
      add_n2_denominators(f2, E);
      const double s12 = pv_integrate(f12, mu.grid, opts.pv).value;
      const double s1 = pv_integrate(f1, mu.grid, opts.pv).value;
      const double s2 = pv_integrate(f2, mu.grid, opts.pv).value;
      sol.split_gap = std::abs(s12 - s1 - s2);
    }
  }

  for (double k : mu.grid.points) {
    std::vector<double> amps(sol.channels.size(), 0.0);
    amps[0] = 1.0;
    double norm2 = 1.0;
    std::vector<double> r1(m.lam_max + 1, 0.0);
    for (const auto& e : sets) {
      const double phase = e.lam % 2 ? 1.0 : -1.0;  // (-1)^(lam+1)
      const double den = m.c * e.lam * (e.lam + 1) + m.omega(k) - sol.energy -
                         eps_eval(e, m, sol.energy, k, false);
      r1[e.lam] = phase * m.u(e.lam, k) * e.ry0 / den;
    }
    for (std::size_t j = 1; j < sol.channels.size(); ++j) {
      const auto& ch = sol.channels[j];
      double r = 0.0;
      if (ch.n == 1) {
        r = r1[ch.lam];
      } else {
        const auto& e = sets[ch.lam];
        for (const auto& term : e.terms) {
          if (term.Lambda != ch.Lambda) continue;
          const double phase = ch.lam % 2 ? 1.0 : -1.0;
          const double den =
              m.c * ch.Lambda * (ch.Lambda + 1) + 2.0 * m.omega(k) - sol.energy;
          r = phase * std::sqrt(2.0) * m.u(ch.lam, k) * term.scfp2 * term.ry /
              (std::sqrt(2.0 * ch.lam + 1.0) * den) * r1[ch.lam];
        }
      }
      amps[j] = r;
      norm2 += r * r;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    sol.coordinates.push_back(std::move(amps));
  }
  return sol;
}

double solve_n1_at_k(int L, double k, const model::AngulonModel& m,
                     const SolveOptions& opts) {
  auto mu = model::measure_from_density(model::KGrid::single(k),
                                        [](double) { return 1.0; });
  return solve_n1(L, m, mu, opts).energy;
}

double solve_n2_l0_at_k(double k, const model::AngulonModel& m, const scfp::Table& t,
                        const SolveOptions& opts) {
  auto mu = model::measure_from_density(model::KGrid::single(k),
                                        [](double) { return 1.0; });
  return solve_n2_l0(m, mu, t, opts).energy;
}

// ---------- density sweep ----------

namespace {

unsigned sweep_threads(std::size_t rows) {
  if (const char* env = std::getenv("ANGULON_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return static_cast<unsigned>(std::min<std::size_t>(t, rows));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::max(1u, static_cast<unsigned>(std::min<std::size_t>(hw ? hw : 1, rows)));
}

}  // namespace

SweepResult sweep_density(const model::BogoliubovParams& base,
                          const std::vector<double>& rho_tilde_log10,
                          const model::KGrid& grid, const SolveOptions& opts) {
  std::vector<double> rho = rho_tilde_log10;
  std::sort(rho.begin(), rho.end());
  SweepResult result;
  result.rows.resize(rho.size());
  if (rho.empty()) return result;

  const scfp::Table table = ham::scfp_for_model(1, 2);
  const auto mu = model::measure_from_density(grid, [](double) { return 1.0; });

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= rho.size()) return;
      SweepRow& row = result.rows[i];
      row.rho_tilde = rho[i];
      try {
        model::BogoliubovParams p = base;
        p.n0 = std::pow(10.0, rho[i]);
        const auto m = model::helium_model(p);
        const auto s2 = solve_n2_l0(m, mu, table, opts);
        row.energy = s2.energy;
        row.residual = s2.residual;
        row.n_poles = s2.n_poles;
        const auto s1 = solve_n1(0, m, mu, opts);
        row.energy_n1 = s1.energy;
        row.ok = true;
      } catch (const std::exception& e) {
        row.ok = false;
        row.message = e.what();
      }
    }
  };

  const unsigned nthreads = sweep_threads(rho.size());
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return result;
}

}  // namespace angulon::spectrum
