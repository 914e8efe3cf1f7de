#pragma once

#include "spintomo/numeric.hpp"

namespace spintomo {

// Angular-momentum coupling coefficients. Every angular momentum and
// projection is passed as a doubled integer, so half-integer spins stay
// exact. Selection-rule violations (triangle conditions, projection sums,
// parity mismatches) return 0 rather than throwing: the kernel sums that
// consume these coefficients sweep all index combinations and rely on the
// invalid ones vanishing.

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the real
// (Condon-Shortley) convention, via the finite Racah sum over exact
// factorials.
double clebsch_gordan(int twice_j1, int twice_m1, int twice_j2, int twice_m2,
                      int twice_J, int twice_M);

// Wigner 3j symbol (j1 j2 j3; m1 m2 m3).
double wigner_3j(int twice_j1, int twice_j2, int twice_j3, int twice_m1,
                 int twice_m2, int twice_m3);

// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} by the Racah single-sum formula.
double wigner_6j(int twice_j1, int twice_j2, int twice_j3, int twice_j4,
                 int twice_j5, int twice_j6);

// Full Wigner D matrix element D^{(L)}_{m'm}(alpha, beta, gamma) =
// exp(-i m' alpha) d^{(L)}_{m'm}(beta) exp(-i m gamma).
Complex wigner_D_element(int twice_L, int twice_mp, int twice_m, double alpha,
                         double beta, double gamma);

} // namespace spintomo
