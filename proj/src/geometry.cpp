#include "spintomo/geometry.hpp"

#include <stdexcept>

namespace spintomo {

UnitAxis UnitAxis::from_angles(double theta, double phi) {
  if (theta < -1e-12 || theta > kPi + 1e-12)
    throw std::domain_error("UnitAxis: theta outside [0, pi]");
  theta = std::clamp(theta, 0.0, kPi);
  phi = wrap_angle_2pi(phi);
  Vector3 n{std::cos(phi) * std::sin(theta), std::sin(phi) * std::sin(theta),
            std::cos(theta)};
  return UnitAxis(theta, phi, n);
}

UnitAxis UnitAxis::from_cartesian(double nx, double ny, double nz) {
  double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (norm < 1e-14)
    throw std::domain_error("UnitAxis: zero vector has no direction");
  nx /= norm;
  ny /= norm;
  nz /= norm;
  double theta = std::acos(std::clamp(nz, -1.0, 1.0));
  double phi = (nx == 0.0 && ny == 0.0) ? 0.0 : wrap_angle_2pi(std::atan2(ny, nx));
  return UnitAxis(theta, phi, Vector3{nx, ny, nz});
}

} // namespace spintomo
