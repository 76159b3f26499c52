#include "angulon/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "angulon/wigner.hpp"

namespace angulon::ham {

std::string ChannelLabel::render() const {
  std::ostringstream os;
  if (vacuum) {
    os << "J=" << J << ",lam=0,n=0,Lam=0,m=0";
  } else {
    os << "J=" << J << ",lam=" << lam << ",n=" << n << ",Lam=" << Lambda
       << ",m=" << mult;
  }
  return os.str();
}

namespace {

// number of multisets of size n over {-lam..lam} with component sum M
long weight_count(int lam, int n, int M) {
  const int span = 2 * n * lam + 1;
  const int offset = n * lam;
  std::vector<std::vector<long>> f(n + 1, std::vector<long>(span, 0));
  f[0][offset] = 1;
  for (int rho = -lam; rho <= lam; ++rho) {
    // unbounded occupation of mode rho; ascending j keeps the update in place
    for (int j = 1; j <= n; ++j)
      for (int m = 0; m < span; ++m) {
        const int prev = m - rho;
        if (prev >= 0 && prev < span) f[j][m] += f[j - 1][prev];
      }
  }
  if (M < -n * lam || M > n * lam) return 0;
  return f[n][M + offset];
}

}  // namespace

int sym_multiplicity(int lam, int n, int Lambda) {
  if (Lambda < 0 || Lambda > n * lam) return 0;
  return static_cast<int>(weight_count(lam, n, Lambda) - weight_count(lam, n, Lambda + 1));
}

std::vector<std::pair<int, int>> sym_labels(int lam, int n) {
  std::vector<std::pair<int, int>> out;
  for (int Lambda = 0; Lambda <= n * lam; ++Lambda) {
    const int m = sym_multiplicity(lam, n, Lambda);
    if (m > 0) out.emplace_back(Lambda, m);
  }
  return out;
}

std::vector<ChannelLabel> enumerate_channels(int L, const Truncation& t) {
  std::vector<ChannelLabel> channels;
  ChannelLabel vac;
  vac.vacuum = true;
  vac.J = L;
  channels.push_back(vac);
  for (int n = 1; n <= t.n_max; ++n) {
    for (int lam = 0; lam <= t.lam_max; ++lam) {
      for (const auto& [Lambda, count] : sym_labels(lam, n)) {
        for (int J = std::abs(L - Lambda); J <= L + Lambda; ++J) {
          if ((J + L + n * lam) % 2) continue;  // unreachable through Y_lam chains
          for (int mult = 0; mult < count; ++mult) {
            ChannelLabel c;
            c.vacuum = false;
            c.J = J;
            c.lam = lam;
            c.n = n;
            c.Lambda = Lambda;
            c.mult = mult;
            channels.push_back(c);
          }
        }
      }
    }
  }
  std::stable_sort(channels.begin() + 1, channels.end(),
                   [](const ChannelLabel& a, const ChannelLabel& b) {
                     return std::tie(a.n, a.lam, a.Lambda, a.J, a.mult) <
                            std::tie(b.n, b.lam, b.Lambda, b.J, b.mult);
                   });
  if (static_cast<int>(channels.size()) > t.channel_cap)
    throw ChannelCapExceeded("channel count " + std::to_string(channels.size()) +
                             " exceeds cap " + std::to_string(t.channel_cap));
  return channels;
}

double u_lambda_L(int lam, int L, int Jp, int Lambdap, int J, int Lambda, double U) {
  const double ry = wigner::reduced_y_value(Jp, lam, J);
  if (ry == 0.0) return 0.0;
  const double sj = wigner::six_j_value(Jp, Lambdap, L, Lambda, J, lam);
  if (sj == 0.0) return 0.0;
  const double phase = (J + L) % 2 ? -1.0 : 1.0;
  return phase * U * ry * sj;
}

double tau(int lam, int n, int Lp, int L, const scfp::Table& t, int mult_p, int mult) {
  const double scfp = t.at(scfp::Key{lam, n + 1, L, mult, Lp, mult_p});
  const double phase = Lp % 2 ? -1.0 : 1.0;
  return phase * std::sqrt((n + 1.0) * (2.0 * Lp + 1.0)) * scfp;
}

double upsilon(int lam, int n, int Lp, int L, const scfp::Table& t, int mult_p,
               int mult) {
  // conj tau(lam^(n-1) L Lp); real by convention
  const double scfp = t.at(scfp::Key{lam, n, Lp, mult_p, L, mult});
  const double phase = L % 2 ? -1.0 : 1.0;
  return phase * std::sqrt(n * (2.0 * L + 1.0)) * scfp;
}

std::pair<double, double> tau_upsilon(int lam, int n, int Lp, int L,
                                      const scfp::Table& t, int mult_p, int mult) {
  const double tv = tau(lam, n, Lp, L, t, mult_p, mult);
  const double uv = n >= 1 ? upsilon(lam, n, Lp, L, t, mult_p, mult) : 0.0;
  return {tv, uv};
}

const scfp::Table& shared_scfp(int lam, int n_max) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, scfp::Table> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(lam, n_max);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, scfp::oracle(lam, n_max)).first->second;
}

scfp::Table scfp_for_model(int lam_max, int n_max) {
  scfp::Table merged;
  for (int lam = 0; lam <= lam_max; ++lam)
    for (const auto& [k, v] : shared_scfp(lam, n_max).entries()) merged.insert(k, v);
  return merged;
}

BlockMatrix assemble_block(int L, double k, const model::AngulonModel& m,
                           const Truncation& t) {
  BlockMatrix block;
  block.L = L;
  block.k = k;
  block.channels = enumerate_channels(L, t);
  const int dim = static_cast<int>(block.channels.size());
  block.entries = Eigen::MatrixXd::Zero(dim, dim);

  const double omega_k = m.omega(k);
  std::vector<double> U(t.lam_max + 1);
  for (int lam = 0; lam <= t.lam_max; ++lam) U[lam] = m.u(lam, k);

  auto entry = [&](const ChannelLabel& a, const ChannelLabel& b) -> double {
    if (a.vacuum && b.vacuum) return m.c * L * (L + 1);
    if (a.vacuum || b.vacuum) {
      const ChannelLabel& e = a.vacuum ? b : a;
      if (e.n != 1 || e.Lambda != e.lam) return 0.0;
      const double phase = e.lam % 2 ? -1.0 : 1.0;
      return phase * std::sqrt(2.0 * e.lam + 1.0) *
             u_lambda_L(e.lam, L, L, 0, e.J, e.lam, U[e.lam]);
    }
    double v = 0.0;
    if (a == b) v += m.c * a.J * (a.J + 1) + a.n * omega_k;
    if (a.lam != b.lam) return v;
    const scfp::Table& table = shared_scfp(a.lam, t.n_max);
    if (a.n == b.n + 1)
      v += u_lambda_L(a.lam, L, a.J, a.Lambda, b.J, b.Lambda, U[a.lam]) *
           tau(a.lam, b.n, a.Lambda, b.Lambda, table, a.mult, b.mult);
    else if (b.n == a.n + 1)
      v += u_lambda_L(a.lam, L, a.J, a.Lambda, b.J, b.Lambda, U[a.lam]) *
           upsilon(a.lam, b.n, a.Lambda, b.Lambda, table, a.mult, b.mult);
    return v;
  };

  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const double v = entry(block.channels[i], block.channels[j]);
      block.entries(i, j) = v;
      block.entries(j, i) = v;
    }

  // the conjugation symmetry of the coupling makes the transposed formula
  // agree; verify on the lower triangle before trusting the mirror
  double asym = 0.0;
  double scale = 1.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j) {
      asym = std::max(asym,
                      std::abs(entry(block.channels[i], block.channels[j]) -
                               block.entries(i, j)));
      scale = std::max(scale, std::abs(block.entries(i, j)));
    }
  if (asym > 1e-12 * scale)
    throw std::logic_error("assembled block violates conjugation symmetry");
  return block;
}

}  // namespace angulon::ham
