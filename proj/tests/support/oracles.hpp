#ifndef ANGULON_TESTS_ORACLES_HPP
#define ANGULON_TESTS_ORACLES_HPP

// Independent oracles used by the test suites.  Everything here deliberately
// avoids the library code paths it is meant to check.

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

#include "angulon/fock.hpp"
#include "angulon/sqrt_rational.hpp"
#include "angulon/wigner.hpp"

namespace oracles {

// <e_B', e_B> evaluated literally as (1/n!) sum over permutations of the
// product of single-mode overlaps.
inline double permanent_inner(const angulon::fock::OccBasis& bra,
                              const angulon::fock::OccBasis& ket) {
  if (bra.size() != ket.size()) return 0.0;
  const int n = bra.size();
  if (n == 0) return 1.0;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  double sum = 0;
  do {
    double prod = 1;
    for (int i = 0; i < n; ++i)
      if (!(bra.modes()[i] == ket.modes()[perm[i]])) {
        prod = 0;
        break;
      }
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / nfact;
}

// Exact j1 (x) j1 -> j = 0 column of Clebsch-Gordan coefficients from the
// ladder construction: a weight-zero vector killed by J+ has alternating
// coefficients, since J+ |m,-m> and J+ |m+1,-m-1> feed the same target with
// the same sqrt((j-m)(j+m+1)) factor.  Normalization and the highest-m1 > 0
// phase fix the column exactly.
inline std::vector<angulon::SqrtRational> singlet_column(int j) {
  std::vector<angulon::SqrtRational> out;  // index m1 = j .. -j
  for (int m = j; m >= -j; --m) {
    // verify the two ladder factors feeding |m+1, -m> agree, then alternate
    if (m < j) {
      const auto from_lower =
          angulon::SqrtRational::of_sqrt(mpq_class((j - m) * (j + m + 1)));
      const auto from_upper = angulon::SqrtRational::of_sqrt(
          mpq_class((j + (m + 1)) * (j - (m + 1) + 1)));
      if (!(from_lower == from_upper))
        throw std::logic_error("ladder factors must match");
    }
    const auto mag = angulon::SqrtRational::of_sqrt(mpq_class(1, 2 * j + 1));
    out.push_back((j - m) % 2 ? -mag : mag);
  }
  return out;
}

// Overlap <(j1 j2) j12, j3; J M | j1, (j2 j3) j23; J M> assembled from raw
// Clebsch-Gordan products; equals
// sqrt((2 j12+1)(2 j23+1)) (-1)^(j1+j2+j3+J) {j1 j2 j12; j3 J j23}.
inline double recoupling_overlap(int j1, int j2, int j3, int j12, int j23, int J,
                                 int M) {
  using angulon::wigner::clebsch_gordan_value;
  double sum = 0;
  for (int m1 = -j1; m1 <= j1; ++m1)
    for (int m2 = -j2; m2 <= j2; ++m2) {
      const int m12 = m1 + m2;
      const int m3 = M - m12;
      if (std::abs(m12) > j12 || std::abs(m3) > j3) continue;
      const int m23 = m2 + m3;
      if (std::abs(m23) > j23) continue;
      sum += clebsch_gordan_value(j1, j2, j12, m1, m2, m12) *
             clebsch_gordan_value(j12, j3, J, m12, m3, M) *
             clebsch_gordan_value(j2, j3, j23, m2, m3, m23) *
             clebsch_gordan_value(j1, j23, J, m1, m23, M);
    }
  return sum;
}

inline double six_j_from_recoupling(int j1, int j2, int j12, int j3, int J, int j23) {
  const double overlap = recoupling_overlap(j1, j2, j3, j12, j23, J, 0);
  const double phase = (j1 + j2 + j3 + J) % 2 ? -1.0 : 1.0;
  return phase * overlap / std::sqrt((2.0 * j12 + 1.0) * (2.0 * j23 + 1.0));
}

}  // namespace oracles

#endif
