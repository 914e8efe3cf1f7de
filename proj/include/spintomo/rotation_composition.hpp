#pragma once

#include "spintomo/geometry.hpp"
#include "spintomo/half_integer.hpp"

namespace spintomo {

// Three successive rotations: first about n1 by phi1, then n2 by phi2, then
// n3 by phi3. The composition is a single rotation by Phi about an axis N;
// only cos(Phi/2) and N sin(Phi/2) are ever needed, and both are closed-form
// polynomial in half-angle sines/cosines.
struct RotationTriple {
  UnitAxis n1, n2, n3;
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
};

// cos(Phi/2) of the composed rotation. The formula is exact; a result outside
// [-1, 1] by more than 1e-12 throws (it would indicate a broken input), and
// anything within that band is clamped.
double compose_cos_half_angle(const RotationTriple &t);

// N sin(Phi/2) of the composed rotation. Together with cos(Phi/2) it
// satisfies |N sin(Phi/2)|^2 + cos^2(Phi/2) = 1.
Vector3 compose_axis_times_sin(const RotationTriple &t);

// Chebyshev polynomial of the second kind, U_n(x), by the three-term
// recurrence U_{n+1} = 2x U_n - U_{n-1}.
double chebyshev_u(int n, double x);

// SU(2) irrep character of a rotation by Phi at spin j, parameterized by
// cos(Phi/2): chi_j = U_{2j}(cos(Phi/2)) = sum_m exp(i m Phi). Throws if
// |cos_half_angle| > 1 + 1e-12.
double character(SpinQuantum j, double cos_half_angle);

} // namespace spintomo
