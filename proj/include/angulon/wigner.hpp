#ifndef ANGULON_WIGNER_HPP
#define ANGULON_WIGNER_HPP

#include "angulon/sqrt_rational.hpp"

namespace angulon::wigner {

// Sizes the exact factorial table for momenta up to jmax (table holds
// (4*jmax + 2)!).  Default jmax is 12; the table grows on demand either way.
void set_max_momentum(int jmax);

bool triangle(int a, int b, int c);

// <j1 m1 j2 m2 | j m> in the Condon-Shortley convention, evaluated with the
// Racah single-sum formula in exact rational arithmetic.  Inputs violating
// the triangle rule or projection selection yield an exact zero.
SqrtRational clebsch_gordan(int j1, int j2, int j, int m1, int m2, int m);

// {j1 j2 j3; j4 j5 j6} via the Racah single-sum formula; exact zero when any
// of the four triads violates triangularity.
SqrtRational six_j(int j1, int j2, int j3, int j4, int j5, int j6);

// Reduced matrix element (jp || Y_lam || j) of a spherical harmonic between
// pure rotor states: sqrt((2*lam+1)(2*j+1)/(4 pi)) <j 0 lam 0 | jp 0>.
// Zero unless j + lam + jp is even.
SqrtRational reduced_y(int jp, int lam, int j);
double reduced_y_value(int jp, int lam, int j);

double clebsch_gordan_value(int j1, int j2, int j, int m1, int m2, int m);
double six_j_value(int j1, int j2, int j3, int j4, int j5, int j6);

}  // namespace angulon::wigner

#endif
