#ifndef ANGULON_SQRT_RATIONAL_HPP
#define ANGULON_SQRT_RATIONAL_HPP

#include <gmpxx.h>

#include <map>
#include <utility>

namespace angulon {

// Exact scalar of the form sign * sqrt(radicand * (4*pi)^pi4) with a
// nonnegative rational radicand kept in lowest terms.  Coupling coefficients
// with integer momenta are closed under products in this representation; the
// symbolic (4*pi)^pi4 factor carries the spherical-harmonic normalization of
// reduced matrix elements so that parity zeros stay exact.
class SqrtRational {
public:
  SqrtRational() : sign_(0), radicand_(0), pi4_(0) {}

  // sign(q) * sqrt(|q|) * (4 pi)^(pi4_power/2)
  static SqrtRational of_sqrt(const mpq_class& q, int pi4_power = 0);
  static SqrtRational of_sqrt(long num, long den = 1, int pi4_power = 0);
  // the rational value q itself
  static SqrtRational of_rational(const mpq_class& q);

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  const mpq_class& radicand() const { return radicand_; }
  int pi4_power() const { return pi4_; }

  double to_double() const;

  SqrtRational operator-() const;
  SqrtRational operator*(const SqrtRational& o) const;
  bool operator==(const SqrtRational& o) const;

  // value = coeff * sqrt(kernel) * (4 pi)^(pi4/2) with kernel squarefree;
  // coeff carries the sign.  Throws if the radicand has a prime factor
  // outside the supported factor base in odd power.
  struct Decomposition {
    mpq_class coeff;
    mpz_class kernel;
    int pi4;
  };
  Decomposition decompose() const;

private:
  int sign_;
  mpq_class radicand_;
  int pi4_;
};

// Exact finite sum of SqrtRational values, grouped by squarefree kernel.
// sqrt(b) for distinct squarefree b are linearly independent over Q, so an
// identity among coupling coefficients can be checked without rounding.
class RadicalSum {
public:
  void add(const SqrtRational& s);
  void add_product(const SqrtRational& a, const SqrtRational& b) { add(a * b); }
  void add_scaled(const mpq_class& c, const SqrtRational& s);
  bool is_zero() const;
  bool equals_rational(const mpq_class& q) const;
  double to_double() const;

private:
  std::map<std::pair<mpz_class, int>, mpq_class> terms_;  // (kernel, pi4) -> coeff
};

}  // namespace angulon

#endif
