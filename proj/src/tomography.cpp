#include "spintomo/tomography.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "spintomo/su2_algebra.hpp"

namespace spintomo {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int order, std::vector<double> &x, std::vector<double> &w) {
  x.resize(order);
  w.resize(order);
  for (int i = 0; i < order; ++i) {
    double root = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = root;
      if (order == 1)
        p1 = root; // P_1
      for (int n = 2; n <= order; ++n) {
        double p2 = ((2 * n - 1) * root * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      double p_l = (order == 1) ? root : p1;
      double p_lm1 = (order == 1) ? 1.0 : p0;
      deriv = order * (root * p_l - p_lm1) / (root * root - 1.0);
      double step = p_l / deriv;
      root -= step;
      if (std::abs(step) < 1e-15)
        break;
    }
    x[i] = root;
    w[i] = 2.0 / ((1.0 - root * root) * deriv * deriv);
  }
}

// Quantizer mixing weights over neighboring projections: coefficient 1 at
// s = 0 and -1/2 at s = +-1 (the 1/(1-3s^2) values).
double quantizer_mix(int twice_delta) {
  if (twice_delta == 0)
    return 1.0;
  if (twice_delta == 2 || twice_delta == -2)
    return -0.5;
  return 0.0;
}

ComplexMatrix sandwich_diagonal_basis(SpinQuantum j, const UnitAxis &n,
                                      const Eigen::VectorXcd &diag) {
  ComplexMatrix rot = rotation_operator(j, n);
  return rot * diag.asDiagonal() * rot.adjoint();
}

} // namespace

SphereQuadrature SphereQuadrature::product_rule(int polar_order,
                                                int azimuthal_order) {
  if (polar_order < 1 || azimuthal_order < 1)
    throw std::invalid_argument("SphereQuadrature: orders must be >= 1");
  std::vector<double> x, w;
  gauss_legendre(polar_order, x, w);

  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(polar_order) * azimuthal_order);
  for (int i = 0; i < polar_order; ++i) {
    double theta = std::acos(std::clamp(x[i], -1.0, 1.0));
    double node_weight = 0.5 * w[i] / azimuthal_order; // absorbs the 1/4pi
    for (int a = 0; a < azimuthal_order; ++a) {
      double phi = kTwoPi * a / azimuthal_order;
      nodes.push_back(Node{UnitAxis::from_angles(theta, phi), node_weight});
    }
  }
  return SphereQuadrature(polar_order, azimuthal_order, std::move(nodes));
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  double herm_gap = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_gap > 1e-12)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      0.5 * (rho_ + rho_.adjoint()), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(SpinQuantum j, SpinProjection m) {
  ComplexMatrix rho = ComplexMatrix::Zero(j.dimension(), j.dimension());
  int idx = basis_index(j, m);
  rho(idx, idx) = 1.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(SpinQuantum j) {
  ComplexMatrix rho =
      ComplexMatrix::Identity(j.dimension(), j.dimension()) / j.dimension();
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::random(SpinQuantum j, Rng &rng) {
  const int dim = j.dimension();
  ComplexMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      g(r, c) = rng.normal_complex();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(std::move(rho));
}

SymbolTable::SymbolTable(SpinQuantum j, SphereQuadrature quad,
                         Eigen::MatrixXcd values, bool is_probability)
    : j_(j), quad_(std::move(quad)), values_(std::move(values)),
      is_probability_(is_probability) {
  if (values_.rows() != j_.dimension() || values_.cols() != quad_.size())
    throw std::invalid_argument("SymbolTable: value grid shape mismatch");
  if (is_probability_) {
    for (int node = 0; node < quad_.size(); ++node) {
      double col_sum = 0.0;
      for (int r = 0; r < values_.rows(); ++r) {
        Complex v = values_(r, node);
        if (std::abs(v.imag()) > 1e-12 || v.real() < -1e-12)
          throw std::invalid_argument("SymbolTable: not a probability table");
        col_sum += v.real();
      }
      if (std::abs(col_sum - 1.0) > 1e-10)
        throw std::invalid_argument("SymbolTable: probabilities do not sum to 1");
    }
  }
}

ComplexMatrix dequantizer(SpinQuantum j, const PhasePoint &x) {
  const int dim = j.dimension();
  if (!x.m.same_parity(j))
    throw std::invalid_argument("dequantizer: projection parity mismatch");
  if (!x.m.in_range(j))
    return ComplexMatrix::Zero(dim, dim);
  ComplexMatrix rot = rotation_operator(j, x.n);
  Eigen::VectorXcd col = rot.col(basis_index(j, x.m));
  return col * col.adjoint();
}

ComplexMatrix quantizer(SpinQuantum j, const PhasePoint &x) {
  const int dim = j.dimension();
  if (!x.m.same_parity(j))
    throw std::invalid_argument("quantizer: projection parity mismatch");
  Eigen::VectorXcd diag(dim);
  for (int r = 0; r < dim; ++r) {
    int twice_delta = projection_at(j, r).twice() - x.m.twice();
    diag(r) = j.dimension() * quantizer_mix(twice_delta);
  }
  return sandwich_diagonal_basis(j, x.n, diag);
}

Tomogram tomogram(const DensityMatrix &rho, const SphereQuadrature &quad) {
  SpinQuantum j = rho.spin();
  const int dim = j.dimension();
  Eigen::MatrixXcd values(dim, quad.size());
  for (int node = 0; node < quad.size(); ++node) {
    ComplexMatrix rot = rotation_operator(j, quad.nodes()[node].axis);
    // w(m, n) = <jm| R^dag rho R |jm>
    ComplexMatrix sandwiched = rot.adjoint() * rho.matrix() * rot;
    for (int r = 0; r < dim; ++r)
      values(r, node) = sandwiched(r, r).real();
  }
  return Tomogram(j, quad, std::move(values), /*is_probability=*/true);
}

DensityMatrix reconstruct(const Tomogram &w) {
  SpinQuantum j = w.spin();
  const SphereQuadrature &quad = w.quadrature();
  if (quad.polar_order() < j.twice() + 1 ||
      quad.azimuthal_order() < 2 * j.twice() + 1)
    throw std::invalid_argument(
        "reconstruct: quadrature under-resolved (need L >= 2j+1, M >= 4j+1)");
  return DensityMatrix(integrate_against_quantizer(w));
}

Complex symbol(const ComplexMatrix &op, SpinQuantum j, const PhasePoint &x) {
  return (op * dequantizer(j, x)).trace();
}

Complex dual_symbol(const ComplexMatrix &op, SpinQuantum j,
                    const PhasePoint &x) {
  return (op * quantizer(j, x)).trace();
}

SymbolTable symbol_table(const ComplexMatrix &op, SpinQuantum j,
                         const SphereQuadrature &quad) {
  const int dim = j.dimension();
  if (op.rows() != dim || op.cols() != dim)
    throw std::invalid_argument("symbol_table: operator dimension mismatch");
  Eigen::MatrixXcd values(dim, quad.size());
  for (int node = 0; node < quad.size(); ++node) {
    ComplexMatrix rot = rotation_operator(j, quad.nodes()[node].axis);
    ComplexMatrix sandwiched = rot.adjoint() * op * rot;
    for (int r = 0; r < dim; ++r)
      values(r, node) = sandwiched(r, r);
  }
  return SymbolTable(j, quad, std::move(values));
}

SymbolTable dual_symbol_table(const ComplexMatrix &op, SpinQuantum j,
                              const SphereQuadrature &quad) {
  const int dim = j.dimension();
  if (op.rows() != dim || op.cols() != dim)
    throw std::invalid_argument("dual_symbol_table: operator dimension mismatch");
  Eigen::MatrixXcd values(dim, quad.size());
  for (int node = 0; node < quad.size(); ++node) {
    ComplexMatrix rot = rotation_operator(j, quad.nodes()[node].axis);
    ComplexMatrix sandwiched = rot.adjoint() * op * rot;
    for (int r = 0; r < dim; ++r) {
      Complex acc = 0.0;
      for (int rr = std::max(0, r - 1); rr <= std::min(dim - 1, r + 1); ++rr)
        acc += quantizer_mix(2 * (rr - r)) * sandwiched(rr, rr);
      values(r, node) = static_cast<double>(dim) * acc;
    }
  }
  return SymbolTable(j, quad, std::move(values));
}

ComplexMatrix integrate_against_quantizer(const SymbolTable &f) {
  SpinQuantum j = f.spin();
  const int dim = j.dimension();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int node = 0; node < f.node_count(); ++node) {
    Eigen::VectorXcd diag(dim);
    for (int r = 0; r < dim; ++r) {
      Complex acc = 0.0;
      for (int rr = std::max(0, r - 1); rr <= std::min(dim - 1, r + 1); ++rr)
        acc += quantizer_mix(2 * (r - rr)) * f.value(rr, node);
      diag(r) = static_cast<double>(dim) * acc;
    }
    out += f.node_weight(node) *
           sandwich_diagonal_basis(j, f.quadrature().nodes()[node].axis, diag);
  }
  return out;
}

ComplexMatrix integrate_against_dequantizer(const SymbolTable &f) {
  SpinQuantum j = f.spin();
  const int dim = j.dimension();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int node = 0; node < f.node_count(); ++node) {
    Eigen::VectorXcd diag(dim);
    for (int r = 0; r < dim; ++r)
      diag(r) = f.value(r, node);
    out += f.node_weight(node) *
           sandwich_diagonal_basis(j, f.quadrature().nodes()[node].axis, diag);
  }
  return out;
}

Complex average_via_dual(const Tomogram &w, const SymbolTable &dual_a) {
  if (!w.same_grid(dual_a))
    throw std::invalid_argument("average_via_dual: grid mismatch");
  KahanComplexSum sum;
  for (int node = 0; node < w.node_count(); ++node)
    for (int r = 0; r < w.projection_count(); ++r)
      sum.add(w.node_weight(node) * w.value(r, node) * dual_a.value(r, node));
  return sum.value();
}

Complex phase_space_integrate(const SymbolTable &f) {
  KahanComplexSum sum;
  for (int node = 0; node < f.node_count(); ++node)
    for (int r = 0; r < f.projection_count(); ++r)
      sum.add(f.node_weight(node) * f.value(r, node));
  return sum.value();
}

} // namespace spintomo
