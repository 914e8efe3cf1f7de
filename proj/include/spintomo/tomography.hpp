#pragma once

#include <vector>

#include "spintomo/geometry.hpp"
#include "spintomo/half_integer.hpp"
#include "spintomo/random.hpp"

namespace spintomo {

// A tomographic sample point x = (m, n): spin projection m measured along
// the unit axis n.
struct PhasePoint {
  SpinProjection m;
  UnitAxis n;
};

// Quadrature on the unit sphere realizing (1/4pi) * integral dOmega:
// Gauss-Legendre in cos(theta) (polar order L) crossed with the uniform
// trapezoid in phi (azimuthal order M). Weights sum to 1 and the rule is
// exact for spherical harmonics up to degree min(2L-1, M-1).
class SphereQuadrature {
public:
  struct Node {
    UnitAxis axis;
    double weight;
  };

  static SphereQuadrature product_rule(int polar_order, int azimuthal_order);

  // Default orders for spin j: L = 2j+2, M = 4j+2, which integrate every
  // band-limited integrand arising at spin j exactly.
  static SphereQuadrature for_spin(SpinQuantum j) {
    return product_rule(j.twice() + 2, 2 * j.twice() + 2);
  }

  int polar_order() const { return polar_order_; }
  int azimuthal_order() const { return azimuthal_order_; }
  const std::vector<Node> &nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }

  bool operator==(const SphereQuadrature &other) const {
    return polar_order_ == other.polar_order_ &&
           azimuthal_order_ == other.azimuthal_order_;
  }

private:
  SphereQuadrature(int polar_order, int azimuthal_order,
                   std::vector<Node> nodes)
      : polar_order_(polar_order), azimuthal_order_(azimuthal_order),
        nodes_(std::move(nodes)) {}

  int polar_order_;
  int azimuthal_order_;
  std::vector<Node> nodes_;
};

// Density operator: Hermitian, unit trace, positive semidefinite (all
// validated on construction).
class DensityMatrix {
public:
  explicit DensityMatrix(ComplexMatrix rho);

  static DensityMatrix pure(SpinQuantum j, SpinProjection m);
  static DensityMatrix maximally_mixed(SpinQuantum j);
  // G G^dag / Tr(G G^dag) with standard complex Gaussian entries.
  static DensityMatrix random(SpinQuantum j, Rng &rng);

  SpinQuantum spin() const { return SpinQuantum(static_cast<int>(rho_.rows()) - 1); }
  const ComplexMatrix &matrix() const { return rho_; }

private:
  ComplexMatrix rho_;
};

// Values of a tomographic symbol (or tomogram) on the product grid of spin
// projections and sphere quadrature nodes. Immutable after construction.
// Rows follow the descending-m basis convention, columns the node order of
// the quadrature.
class SymbolTable {
public:
  SymbolTable(SpinQuantum j, SphereQuadrature quad, Eigen::MatrixXcd values,
              bool is_probability = false);

  SpinQuantum spin() const { return j_; }
  const SphereQuadrature &quadrature() const { return quad_; }
  const Eigen::MatrixXcd &values() const { return values_; }
  bool is_probability() const { return is_probability_; }

  int node_count() const { return quad_.size(); }
  int projection_count() const { return j_.dimension(); }

  Complex value(int m_row, int node) const { return values_(m_row, node); }
  PhasePoint point(int m_row, int node) const {
    return PhasePoint{projection_at(j_, m_row), quad_.nodes()[node].axis};
  }
  double node_weight(int node) const { return quad_.nodes()[node].weight; }

  bool same_grid(const SymbolTable &other) const {
    return j_ == other.j_ && quad_ == other.quad_;
  }

private:
  SpinQuantum j_;
  SphereQuadrature quad_;
  Eigen::MatrixXcd values_;
  bool is_probability_;
};

using Tomogram = SymbolTable;

// Dequantizer U_j(x) = R(n) |j m><j m| R(n)^dag: Hermitian rank-1 projector
// onto the n.J eigenstate of eigenvalue m. Zero matrix when |m| > j.
ComplexMatrix dequantizer(SpinQuantum j, const PhasePoint &x);

// Quantizer D_j(x) = (2j+1) * [U_j(m,n) - U_j(m+1,n)/2 - U_j(m-1,n)/2];
// Hermitian, reconstructs operators from their symbols.
ComplexMatrix quantizer(SpinQuantum j, const PhasePoint &x);

// Spin tomogram w(m, n) = Tr(rho U_j(m, n)) sampled on the quadrature grid.
Tomogram tomogram(const DensityMatrix &rho, const SphereQuadrature &quad);

// Density operator from its tomogram, rho = integral w(x) D_j(x) dx.
// Throws if the quadrature is too coarse for the reconstruction to be exact
// (requires L >= 2j+1, M >= 4j+1).
DensityMatrix reconstruct(const Tomogram &w);

// Tomographic symbol f_A(x) = Tr(A U_j(x)) and its dual
// f^d_A(x) = Tr(A D_j(x)).
Complex symbol(const ComplexMatrix &op, SpinQuantum j, const PhasePoint &x);
Complex dual_symbol(const ComplexMatrix &op, SpinQuantum j,
                    const PhasePoint &x);

SymbolTable symbol_table(const ComplexMatrix &op, SpinQuantum j,
                         const SphereQuadrature &quad);
SymbolTable dual_symbol_table(const ComplexMatrix &op, SpinQuantum j,
                              const SphereQuadrature &quad);

// Inverse maps: integral f(x) D_j(x) dx and integral f(x) U_j(x) dx.
ComplexMatrix integrate_against_quantizer(const SymbolTable &f);
ComplexMatrix integrate_against_dequantizer(const SymbolTable &f);

// <A> = Tr(rho A) = integral w(x) f^d_A(x) dx. Both tables must share the
// grid.
Complex average_via_dual(const Tomogram &w, const SymbolTable &dual_a);

// integral f(x) dx = sum_m (1/4pi) integral dOmega f(m, n).
Complex phase_space_integrate(const SymbolTable &f);

} // namespace spintomo
