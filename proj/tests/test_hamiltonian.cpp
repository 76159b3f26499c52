#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "angulon/hamiltonian.hpp"
#include "angulon/model.hpp"
#include "angulon/wigner.hpp"
#include "support/fock_block_oracle.hpp"

using namespace angulon;
using ham::ChannelLabel;
using ham::Truncation;

namespace {

model::AngulonModel random_toy(std::mt19937& rng, int lam_max = 1) {
  std::uniform_real_distribution<double> uni(0.2, 1.0);
  model::AngulonModel m;
  m.c = 1.0;
  m.lam_max = lam_max;
  const double a = 0.5 + uni(rng);
  const double b = 0.2 * uni(rng);
  std::vector<double> us(lam_max + 1);
  for (auto& u : us) u = uni(rng);
  const double s2 = 1.0 + uni(rng);
  m.omega = [a, b](double k) { return a + b * k * k; };
  m.coupling = [us, s2, lam_max](int lam, double k) {
    if (lam > lam_max) return 0.0;
    return us[lam] * k * std::exp(-k * k / s2);
  };
  return m;
}

}  // namespace

TEST_CASE("symmetric-power labels agree with the explicit coupled basis") {
  for (int lam = 0; lam <= 2; ++lam)
    for (int n = 0; n <= 3; ++n) {
      const auto labels = ham::sym_labels(lam, n);
      const auto& family = fock::couple_basis(lam, n);
      for (const auto& [Lambda, count] : labels) {
        int seen = 0;
        for (const auto& v : family)
          if (v.label.Lambda == Lambda && v.label.M == Lambda) ++seen;
        CHECK(seen == count);
      }
      long dim = 0;
      for (const auto& [Lambda, count] : labels) dim += count * (2L * Lambda + 1);
      CHECK(dim == fock::sym_dimension(lam, n));
    }
  // lam = 2, n = 4 carries a doubled Lambda = 2, the first genuine multiplicity
  CHECK(ham::sym_multiplicity(2, 4, 2) == 2);
}

TEST_CASE("channel enumeration: L = 0 single-phonon truncation") {
  const auto channels = ham::enumerate_channels(0, Truncation{1, 1, 64});
  REQUIRE(channels.size() == 3);
  CHECK(channels[0].vacuum);
  CHECK(channels[0].J == 0);
  // triangle rules force J = Lambda = lam at L = 0, n = 1
  CHECK(channels[1] == ChannelLabel{false, 0, 0, 1, 0, 0});
  CHECK(channels[2] == ChannelLabel{false, 1, 1, 1, 1, 0});
}

TEST_CASE("channel enumeration: L = 0 two-phonon truncation adds even Lambda") {
  const auto channels = ham::enumerate_channels(0, Truncation{2, 1, 64});
  // previous list plus (J=Lambda, lam, n=2, Lambda even)
  std::vector<ChannelLabel> n2;
  for (const auto& c : channels)
    if (!c.vacuum && c.n == 2) n2.push_back(c);
  REQUIRE(n2.size() == 3);
  CHECK(n2[0] == ChannelLabel{false, 0, 0, 2, 0, 0});
  CHECK(n2[1] == ChannelLabel{false, 0, 1, 2, 0, 0});
  CHECK(n2[2] == ChannelLabel{false, 2, 1, 2, 2, 0});
}

TEST_CASE("channel enumeration: degenerate triangles") {
  const auto channels = ham::enumerate_channels(1, Truncation{1, 0, 64});
  REQUIRE(channels.size() == 2);
  CHECK(channels[0].vacuum);
  CHECK(channels[0].J == 1);
  CHECK(channels[1] == ChannelLabel{false, 1, 0, 1, 0, 0});
}

TEST_CASE("channel enumeration respects the coupling parity chain") {
  // L = 1, lam = 1, n = 1: J in {0, 2}; J = 1 has (J||Y_1||L) = 0
  const auto channels = ham::enumerate_channels(1, Truncation{1, 1, 64});
  for (const auto& c : channels)
    if (!c.vacuum && c.lam == 1) CHECK(c.J % 2 == 0);
}

TEST_CASE("channel cap") {
  CHECK_THROWS_AS((void)ham::enumerate_channels(2, Truncation{2, 2, 4}),
                  ham::ChannelCapExceeded);
}

TEST_CASE("coupling matrix element symmetry and zeros") {
  // parity zero via the reduced matrix element
  CHECK(ham::u_lambda_L(1, 0, 1, 1, 1, 1, 1.0) == 0.0);
  // triangle-violating six-j
  CHECK(ham::u_lambda_L(1, 0, 2, 1, 1, 5, 1.0) == 0.0);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> mom(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int lam = mom(rng) % 3;
    const int L = mom(rng);
    const int Jp = mom(rng), Lp = mom(rng), J = mom(rng), Lam = mom(rng);
    const double lhs = ham::u_lambda_L(lam, L, Jp, Lp, J, Lam, 0.83);
    const double rhs = ham::u_lambda_L(lam, L, J, Lam, Jp, Lp, 0.83);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("tau and upsilon against the base-case coefficients") {
  const auto& t1 = ham::shared_scfp(1, 3);
  const auto& t2 = ham::shared_scfp(2, 3);
  // n = 0: tau = (-1)^Lp sqrt(2 Lp + 1) delta(L, 0) delta(Lp, lam)
  CHECK(ham::tau(1, 0, 1, 0, t1) == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
  CHECK(ham::tau(2, 0, 2, 0, t2) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  // n = 1: tau = (-1)^Lp sqrt(2 (2 Lp + 1)) delta(L, lam) (lam lam||lam^2 Lp)
  CHECK(ham::tau(1, 1, 2, 1, t1) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(ham::tau(1, 1, 0, 1, t1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // upsilon reciprocity: upsilon(lam^(n+1) L Lp) = tau(lam^n Lp L)
  for (int n = 0; n <= 2; ++n)
    for (int Lp = 0; Lp <= 4; Lp += 2)
      for (int L = 0; L <= 4; L += 2) {
        const auto tv = t2.find(scfp::Key{2, n + 1, L, 0, Lp, 0});
        if (!tv) continue;
        CHECK(ham::upsilon(2, n + 1, L, Lp, t2) ==
              doctest::Approx(ham::tau(2, n, Lp, L, t2)).epsilon(1e-12));
      }
  CHECK_THROWS_AS((void)ham::tau(1, 3, 1, 1, t1), scfp::MissingEntry);
}

TEST_CASE("zero coupling gives the free diagonal block") {
  model::ToyParams p;
  p.a = 0.7;
  p.b = 0.1;
  const auto m = model::toy_model(p);
  for (int L = 0; L <= 2; ++L) {
    const auto block = ham::assemble_block(L, 1.3, m, Truncation{2, 1, 128});
    const double w = m.omega(1.3);
    for (std::size_t i = 0; i < block.channels.size(); ++i) {
      const auto& ch = block.channels[i];
      const double expected =
          ch.vacuum ? m.c * L * (L + 1) : m.c * ch.J * (ch.J + 1) + ch.n * w;
      CHECK(block.entries(i, i) == doctest::Approx(expected).epsilon(1e-14));
      for (std::size_t j = 0; j < block.channels.size(); ++j)
        if (i != j) CHECK(block.entries(i, j) == 0.0);
    }
  }
}

TEST_CASE("vacuum coupling entry has the closed 2x2 form") {
  model::ToyParams p;
  p.a = 1.1;
  p.u1 = 0.6;
  p.sigma = 2.0;
  const auto m = model::toy_model(p);
  const double k = 0.9;
  const auto block = ham::assemble_block(0, k, m, Truncation{1, 1, 64});
  // channels: vacuum, (J=0,lam=0,n=1), (J=1,lam=1,n=1); u0 = 0 decouples lam=0
  REQUIRE(block.channels.size() == 3);
  const double w = -std::sqrt(3.0) * ham::u_lambda_L(1, 0, 0, 0, 1, 1, m.u(1, k));
  CHECK(block.entries(0, 2) == doctest::Approx(w).epsilon(1e-13));
  CHECK(block.entries(0, 1) == 0.0);
  CHECK(block.entries(0, 0) == 0.0);
  CHECK(block.entries(2, 2) == doctest::Approx(2 * m.c + m.omega(k)).epsilon(1e-14));
}

TEST_CASE("blocks are symmetric on random models") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    const auto m = random_toy(rng, 2);
    for (int L = 0; L <= 2; ++L) {
      const auto block = ham::assemble_block(L, 0.7 + 0.4 * trial, m, Truncation{2, 2, 256});
      const double asym = (block.entries - block.entries.transpose()).cwiseAbs().maxCoeff();
      CHECK(asym < 1e-12);
    }
  }
}

TEST_CASE("closed-form entries match the direct Fock-space bra-kets") {
  std::mt19937 rng(5);
  const auto m = random_toy(rng, 1);
  const Truncation trunc{2, 1, 128};
  const int L = 1;
  const double k = 1.7;
  const auto block = ham::assemble_block(L, k, m, trunc);
  const int impurity_cap = L + (trunc.n_max + 1) * trunc.lam_max;
  for (std::size_t i = 0; i < block.channels.size(); ++i)
    for (std::size_t j = 0; j < block.channels.size(); ++j) {
      const double expected =
          testsupport::oracle_entry(block.channels[i], block.channels[j], L, 0, m, k,
                                    trunc.n_max + 1, impurity_cap);
      CHECK(block.entries(i, j) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("oracle entries do not depend on the total projection") {
  std::mt19937 rng(11);
  const auto m = random_toy(rng, 1);
  const Truncation trunc{2, 1, 128};
  const int L = 2;
  const double k = 0.8;
  const auto channels = ham::enumerate_channels(L, trunc);
  for (std::size_t i = 0; i < channels.size(); ++i)
    for (std::size_t j = i; j < channels.size(); ++j) {
      const double at0 = testsupport::oracle_entry(channels[i], channels[j], L, 0, m, k, 3, 8);
      const double at2 = testsupport::oracle_entry(channels[i], channels[j], L, 2, m, k, 3, 8);
      CHECK(at0 == doctest::Approx(at2).epsilon(1e-10));
    }
}

TEST_CASE("eigenvalues converge to the free diagonal as couplings shrink") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    const auto base = random_toy(rng, 1);
    auto scaled = [&](double t) {
      model::AngulonModel m = base;
      auto inner_coupling = base.coupling;
      m.coupling = [inner_coupling, t](int lam, double k) {
        return t * inner_coupling(lam, k);
      };
      return m;
    };
    const auto free_block = ham::assemble_block(1, 1.1, scaled(0.0), Truncation{2, 1, 128});
    auto deviation = [&](double t) {
      const auto block = ham::assemble_block(1, 1.1, scaled(t), Truncation{2, 1, 128});
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block.entries);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(free_block.entries);
      return (es.eigenvalues() - es0.eigenvalues()).cwiseAbs().maxCoeff();
    };
    const double d1 = deviation(0.2);
    const double d2 = deviation(0.1);
    CHECK(d2 <= 0.6 * d1);  // at least linear convergence
  }
}
