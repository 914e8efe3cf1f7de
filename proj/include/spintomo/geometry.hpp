#pragma once

#include <Eigen/Dense>

#include "spintomo/numeric.hpp"

namespace spintomo {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Vector3 = Eigen::Vector3d;

// Unit direction on the sphere, n = (cos(phi) sin(theta), sin(phi) sin(theta),
// cos(theta)), with theta in [0, pi] and phi in [0, 2*pi).
class UnitAxis {
public:
  static UnitAxis from_angles(double theta, double phi);

  // Normalizes the input; throws on a (near-)zero vector.
  static UnitAxis from_cartesian(double nx, double ny, double nz);
  static UnitAxis from_cartesian(const Vector3 &n) {
    return from_cartesian(n.x(), n.y(), n.z());
  }

  static UnitAxis z() { return from_angles(0.0, 0.0); }

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  const Vector3 &cartesian() const { return n_; }

private:
  UnitAxis(double theta, double phi, Vector3 n)
      : theta_(theta), phi_(phi), n_(std::move(n)) {}

  double theta_;
  double phi_;
  Vector3 n_;
};

inline double wrap_angle_2pi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0)
    w += kTwoPi;
  return w;
}

} // namespace spintomo
