#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "angulon/wigner.hpp"
#include "support/oracles.hpp"

using namespace angulon;
using wigner::clebsch_gordan;
using wigner::clebsch_gordan_value;
using wigner::reduced_y;
using wigner::six_j;
using wigner::six_j_value;
using wigner::triangle;

namespace {
constexpr double kFourPi = 4.0 * 3.14159265358979323846;
}

TEST_CASE("coupling with the scalar representation is the identity") {
  for (int j = 0; j <= 4; ++j)
    for (int m = -j; m <= j; ++m)
      CHECK(clebsch_gordan(j, 0, j, m, 0, m) == SqrtRational::of_rational(1));
}

TEST_CASE("parity-forced zeros") {
  CHECK(clebsch_gordan(1, 1, 1, 0, 0, 0).is_zero());
  CHECK(clebsch_gordan(2, 2, 3, 0, 0, 0).is_zero());
}

TEST_CASE("stretched state is a single product state") {
  CHECK(clebsch_gordan(1, 1, 2, 1, 1, 2) == SqrtRational::of_rational(1));
  CHECK(clebsch_gordan(3, 2, 5, 3, 2, 5) == SqrtRational::of_rational(1));
}

TEST_CASE("selection rules give exact zeros") {
  CHECK(clebsch_gordan(1, 1, 2, 1, 1, 1).is_zero());   // m1+m2 != m
  CHECK(clebsch_gordan(1, 1, 3, 0, 0, 0).is_zero());   // triangle violated
  CHECK(clebsch_gordan(1, 1, 0, 2, -2, 0).is_zero());  // |m1| > j1
}

TEST_CASE("singlet column from the exact ladder construction") {
  // includes the frozen value <1 1 1 -1 | 0 0> = +sqrt(1/3)
  CHECK(clebsch_gordan(1, 1, 0, 1, -1, 0) == SqrtRational::of_sqrt(1, 3));
  for (int j = 1; j <= 3; ++j) {
    const auto column = oracles::singlet_column(j);
    for (int m = j; m >= -j; --m)
      CHECK(clebsch_gordan(j, j, 0, m, -m, 0) == column[j - m]);
  }
}

TEST_CASE("six-j special cases") {
  // {a b c; 0 c b} = (-1)^(a+b+c)/sqrt((2b+1)(2c+1)) at (1,1,2)
  CHECK(six_j(1, 1, 2, 0, 2, 1) == SqrtRational::of_sqrt(1, 15));
  // frozen from the recoupling oracle below
  CHECK(six_j(1, 1, 1, 1, 1, 1) == SqrtRational::of_rational(mpq_class(1, 6)));
  // any triad violating triangularity
  CHECK(six_j(1, 1, 3, 1, 1, 1).is_zero());
  CHECK(six_j(2, 1, 1, 4, 1, 1).is_zero());
}

TEST_CASE("six-j against the three-spin recoupling oracle") {
  const int cases[][6] = {
      {1, 1, 1, 1, 1, 1}, {1, 1, 2, 1, 1, 1}, {2, 1, 1, 1, 2, 2},
      {2, 2, 2, 2, 2, 2}, {3, 2, 1, 2, 1, 2}, {2, 1, 2, 3, 2, 2},
  };
  for (const auto& c : cases) {
    const double expected =
        oracles::six_j_from_recoupling(c[0], c[1], c[2], c[3], c[4], c[5]);
    const double actual = six_j_value(c[0], c[1], c[2], c[3], c[4], c[5]);
    CHECK(actual == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("CG orthogonality is an exact rational identity") {
  for (int j1 = 0; j1 <= 4; ++j1)
    for (int j2 = 0; j2 <= 4; ++j2)
      for (int j = std::abs(j1 - j2); j <= j1 + j2; ++j)
        for (int m = -j; m <= j; ++m) {
          mpq_class sum = 0;
          for (int m1 = -j1; m1 <= j1; ++m1) {
            const int m2 = m - m1;
            if (std::abs(m2) > j2) continue;
            sum += clebsch_gordan(j1, j2, j, m1, m2, m).radicand();  // value^2
          }
          CHECK(sum == 1);
        }
}

TEST_CASE("CG completeness is an exact radical identity") {
  for (int j1 = 0; j1 <= 3; ++j1)
    for (int j2 = 0; j2 <= 3; ++j2)
      for (int m1 = -j1; m1 <= j1; ++m1)
        for (int m2 = -j2; m2 <= j2; ++m2)
          for (int m1p = -j1; m1p <= j1; ++m1p) {
            const int m2p = m1 + m2 - m1p;
            if (std::abs(m2p) > j2) continue;
            RadicalSum sum;
            for (int j = std::abs(j1 - j2); j <= j1 + j2; ++j)
              sum.add_product(clebsch_gordan(j1, j2, j, m1, m2, m1 + m2),
                              clebsch_gordan(j1, j2, j, m1p, m2p, m1 + m2));
            CHECK(sum.equals_rational(m1 == m1p && m2 == m2p ? 1 : 0));
          }
}

TEST_CASE("six-j orthogonality is an exact radical identity") {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d)
          for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) {
              if (!triangle(a, d, p) || !triangle(b, c, p)) continue;
              if (!triangle(a, d, q) || !triangle(b, c, q)) continue;
              RadicalSum sum;
              for (int x = std::max(std::abs(a - b), std::abs(c - d));
                   x <= std::min(a + b, c + d); ++x)
                sum.add_scaled(mpq_class(2 * x + 1),
                               six_j(a, b, x, c, d, p) * six_j(a, b, x, c, d, q));
              CHECK(sum.equals_rational(p == q ? mpq_class(1, 2 * p + 1) : 0));
            }
}

TEST_CASE("reduced spherical-harmonic matrix elements") {
  // (lam || Y_lam || 0) = sqrt((2 lam + 1)/(4 pi))
  for (int lam = 0; lam <= 3; ++lam) {
    CHECK(reduced_y(lam, lam, 0) == SqrtRational::of_sqrt(2 * lam + 1, 1, -1));
    CHECK(reduced_y(lam, lam, 0).to_double() ==
          doctest::Approx(std::sqrt((2.0 * lam + 1.0) / kFourPi)).epsilon(1e-14));
  }
  // odd total momentum vanishes
  CHECK(reduced_y(1, 1, 1).is_zero());
  CHECK(reduced_y(2, 1, 2).is_zero());
  // (0 || Y_1 || 1) = sqrt(9/(4 pi)) <1 0 1 0|0 0>, sign fixed by the exact CG
  CHECK(clebsch_gordan(1, 1, 0, 0, 0, 0) == -SqrtRational::of_sqrt(1, 3));
  CHECK(reduced_y(0, 1, 1) == -SqrtRational::of_sqrt(3, 1, -1));
}

TEST_CASE("reduced matrix element antisymmetry, exact") {
  for (int a = 0; a <= 4; ++a)
    for (int lam = 0; lam <= 3; ++lam)
      for (int b = 0; b <= 4; ++b) {
        const auto lhs = reduced_y(a, lam, b);
        const auto rhs = reduced_y(b, lam, a);
        CHECK(lhs == ((a - b) % 2 ? -rhs : rhs));
      }
}

TEST_CASE("momenta must be nonnegative") {
  CHECK_THROWS_AS((void)clebsch_gordan(-1, 0, 1, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)six_j(0, 0, 0, -2, 0, 0), std::invalid_argument);
}

TEST_CASE("caches are safe under concurrent mixed access") {
  auto worker = [] {
    for (int j1 = 0; j1 <= 3; ++j1)
      for (int j2 = 0; j2 <= 3; ++j2)
        for (int j = std::abs(j1 - j2); j <= j1 + j2; ++j)
          for (int m1 = -j1; m1 <= j1; ++m1) {
            (void)clebsch_gordan_value(j1, j2, j, m1, 0, m1);
            (void)six_j_value(j1, j2, j, j1, j2, j);
          }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  CHECK(clebsch_gordan(1, 1, 0, 1, -1, 0) == SqrtRational::of_sqrt(1, 3));
}
