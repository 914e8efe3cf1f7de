#pragma once

#include "spintomo/geometry.hpp"
#include "spintomo/half_integer.hpp"

namespace spintomo {

struct AngularMomenta {
  ComplexMatrix jx, jy, jz;
};

// Matrix representations of Jx, Jy, Jz for spin j (descending-m basis):
// Jz = diag(j, j-1, ..., -j), Jx/Jy from the ladder construction. Hermitian
// by construction.
AngularMomenta angular_momentum(SpinQuantum j);

// Single element d^{(j)}_{m'm}(beta) of the rotation matrix about the y axis,
// <j m'| exp(-i beta Jy) |j m>, via the standard finite factorial sum. All
// projections are doubled integers.
double wigner_small_d_element(int twice_j, int twice_mp, int twice_m,
                              double beta);

// Full (2j+1) x (2j+1) little-d matrix; real orthogonal.
ComplexMatrix wigner_small_d(SpinQuantum j, double beta);

// R(n) = exp(-i (n_perp . J) theta) with n_perp = (-sin phi, cos phi, 0),
// assembled as Rz(phi) Ry(theta) Rz(-phi): element (m', m) is
// exp(-i (m'-m) phi) d_{m'm}(theta). Satisfies R(n) Jz R(n)^dag = n . J.
ComplexMatrix rotation_operator(SpinQuantum j, const UnitAxis &n);

// exp(-i (n . J) phi), computed exactly as R(n) exp(-i phi Jz) R(n)^dag.
ComplexMatrix axis_exponential(SpinQuantum j, const UnitAxis &n, double phi);

} // namespace spintomo
