#include "spintomo/rotation_composition.hpp"

#include <stdexcept>

namespace spintomo {

double compose_cos_half_angle(const RotationTriple &t) {
  const Vector3 &n1 = t.n1.cartesian();
  const Vector3 &n2 = t.n2.cartesian();
  const Vector3 &n3 = t.n3.cartesian();
  const double c1 = std::cos(0.5 * t.phi1), s1 = std::sin(0.5 * t.phi1);
  const double c2 = std::cos(0.5 * t.phi2), s2 = std::sin(0.5 * t.phi2);
  const double c3 = std::cos(0.5 * t.phi3), s3 = std::sin(0.5 * t.phi3);

  double v = c1 * c2 * c3 - n1.dot(n2) * s1 * s2 * c3 -
             n2.dot(n3) * c1 * s2 * s3 - n3.dot(n1) * s1 * c2 * s3 +
             n1.dot(n2.cross(n3)) * s1 * s2 * s3;

  if (std::abs(v) > 1.0 + 1e-12)
    throw std::logic_error("compose_cos_half_angle: result outside [-1, 1]");
  return std::clamp(v, -1.0, 1.0);
}

Vector3 compose_axis_times_sin(const RotationTriple &t) {
  const Vector3 &n1 = t.n1.cartesian();
  const Vector3 &n2 = t.n2.cartesian();
  const Vector3 &n3 = t.n3.cartesian();
  const double c1 = std::cos(0.5 * t.phi1), s1 = std::sin(0.5 * t.phi1);
  const double c2 = std::cos(0.5 * t.phi2), s2 = std::sin(0.5 * t.phi2);
  const double c3 = std::cos(0.5 * t.phi3), s3 = std::sin(0.5 * t.phi3);

  Vector3 v = n1 * (s1 * c2 * c3) + n2 * (c1 * s2 * c3) + n3 * (c1 * c2 * s3);
  v -= (n1 * n2.dot(n3) - n2 * n1.dot(n3) + n3 * n1.dot(n2)) * (s1 * s2 * s3);
  v -= n1.cross(n2) * (s1 * s2 * c3);
  v -= n2.cross(n3) * (c1 * s2 * s3);
  v -= n1.cross(n3) * (s1 * c2 * s3);
  return v;
}

double chebyshev_u(int n, double x) {
  if (n < 0)
    throw std::invalid_argument("chebyshev_u: negative degree");
  double prev = 1.0; // U_0
  if (n == 0)
    return prev;
  double cur = 2.0 * x; // U_1
  for (int k = 1; k < n; ++k) {
    double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double character(SpinQuantum j, double cos_half_angle) {
  if (std::abs(cos_half_angle) > 1.0 + 1e-12)
    throw std::domain_error("character: |cos(Phi/2)| > 1");
  return chebyshev_u(j.twice(), std::clamp(cos_half_angle, -1.0, 1.0));
}

} // namespace spintomo
