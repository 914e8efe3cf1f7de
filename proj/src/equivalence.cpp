#include "spintomo/equivalence.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "spintomo/angular_coefficients.hpp"
#include "spintomo/su2_algebra.hpp"

namespace spintomo {

namespace {

// Per-spin coefficient tables for the CG-form kernel.
struct CgTables {
  int twice_j;
  int l_max; // = 2j
  std::vector<double> cg;   // [(L, m-row)] -> <j m; j -m | L 0>
  std::vector<double> sixj; // [(L1, L2, L3)] -> {L2 L3 L1; j j j}

  double cg0(int L, int m_row) const { return cg[L * (twice_j + 1) + m_row]; }
  double six(int L1, int L2, int L3) const {
    return sixj[(L1 * (l_max + 1) + L2) * (l_max + 1) + L3];
  }
};

std::shared_ptr<const CgTables> tables_for(SpinQuantum j) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CgTables>> cache;

  std::scoped_lock lock(mutex);
  auto it = cache.find(j.twice());
  if (it != cache.end())
    return it->second;

  auto t = std::make_shared<CgTables>();
  const int tj = j.twice();
  t->twice_j = tj;
  t->l_max = tj;
  t->cg.resize((tj + 1) * (tj + 1));
  for (int L = 0; L <= tj; ++L)
    for (int row = 0; row <= tj; ++row) {
      int tm = tj - 2 * row;
      t->cg[L * (tj + 1) + row] = clebsch_gordan(tj, tm, tj, -tm, 2 * L, 0);
    }
  t->sixj.resize((tj + 1) * (tj + 1) * (tj + 1));
  for (int L1 = 0; L1 <= tj; ++L1)
    for (int L2 = 0; L2 <= tj; ++L2)
      for (int L3 = 0; L3 <= tj; ++L3)
        t->sixj[(L1 * (tj + 1) + L2) * (tj + 1) + L3] =
            wigner_6j(2 * L2, 2 * L3, 2 * L1, tj, tj, tj);

  cache[j.twice()] = t;
  return t;
}

// D^{(L)}_{0,-M}(0, theta, -phi) for all L <= l_max, |M| <= L.
struct DTable {
  int l_max;
  std::vector<Complex> vals; // [(L, M + L)]

  Complex at(int L, int M) const { return vals[L * L + (M + L)]; }
};

DTable d_table(int l_max, const UnitAxis &n) {
  DTable t;
  t.l_max = l_max;
  t.vals.resize((l_max + 1) * (l_max + 1));
  for (int L = 0; L <= l_max; ++L)
    for (int M = -L; M <= L; ++M)
      t.vals[L * L + (M + L)] =
          wigner_D_element(2 * L, 0, -2 * M, 0.0, n.theta(), -n.phi());
  return t;
}

int row_of(int twice_j, int twice_m) { return (twice_j - twice_m) / 2; }

} // namespace

Complex kernel_cg(SpinQuantum j, const KernelPoint &p) {
  const int tj = j.twice();
  const int tm1 = p.x1.m.twice();
  const int tm2 = p.x2.m.twice();
  const int tm3 = p.x3.m.twice();
  if (std::abs(tm1) > tj || std::abs(tm2) > tj || std::abs(tm3) > tj)
    return 0.0; // the CG factors vanish outside the projection range

  auto tables = tables_for(j);
  DTable d1 = d_table(tj, p.x1.n);
  DTable d2 = d_table(tj, p.x2.n);
  DTable d3 = d_table(tj, p.x3.n);

  const int row1 = row_of(tj, tm1);
  const int row2 = row_of(tj, tm2);
  const int row3 = row_of(tj, tm3);

  KahanComplexSum total;
  for (int L1 = 0; L1 <= tj; ++L1) {
    double c1 = tables->cg0(L1, row1);
    if (c1 == 0.0)
      continue;
    for (int L2 = 0; L2 <= tj; ++L2) {
      double c2 = tables->cg0(L2, row2);
      if (c2 == 0.0)
        continue;
      for (int L3 = 0; L3 <= tj; ++L3) {
        double c3 = tables->cg0(L3, row3);
        double six = tables->six(L1, L2, L3);
        if (c3 == 0.0 || six == 0.0)
          continue;

        // Weight (2L3+1)^{3/2} (2L2+1)^{3/2} (2L1+1)^{1/2}: one power of
        // (2L+1) from each quantizer's dual normalization, half powers from
        // the tensor-operator trace. No L-dependent phase survives in this
        // D-function convention (pinned numerically against the
        // tensor-assembled quantizer).
        double weight =
            std::sqrt(pow_int(2.0 * L3 + 1.0, 3) * pow_int(2.0 * L2 + 1.0, 3) *
                      (2.0 * L1 + 1.0));

        KahanComplexSum inner;
        for (int M2 = -L2; M2 <= L2; ++M2)
          for (int M3 = -L3; M3 <= L3; ++M3) {
            int M1 = -M2 - M3;
            if (std::abs(M1) > L1)
              continue;
            double three =
                wigner_3j(2 * L2, 2 * L3, 2 * L1, 2 * M2, 2 * M3, 2 * M1);
            if (three == 0.0)
              continue;
            inner.add(three * d1.at(L1, M1) * d2.at(L2, M2) * d3.at(L3, M3));
          }
        total.add(weight * c1 * c2 * c3 * six * inner.value());
      }
    }
  }

  double phase = parity_sign((tj - tm1 - tm2 - tm3) / 2);
  return phase * total.value();
}

Complex delta_j1(const KernelPoint &p) {
  const double m1 = p.x1.m.value();
  const double m2 = p.x2.m.value();
  const double m3 = p.x3.m.value();
  const Vector3 &n1 = p.x1.n.cartesian();
  const Vector3 &n2 = p.x2.n.cartesian();
  const Vector3 &n3 = p.x3.n.cartesian();
  const double d12 = n1.dot(n2);
  const double d23 = n2.dot(n3);
  const double d31 = n3.dot(n1);
  const double trip = n1.dot(n2.cross(n3));

  auto leg = [](double d) { return 3.0 * d * d - 1.0; }; // 2 P_2(d)
  const double g1 = 3.0 * m1 * m1 - 2.0;
  const double g2 = 3.0 * m2 * m2 - 2.0;
  const double g3 = 3.0 * m3 * m3 - 2.0;
  const double spread =
      5.0 - 3.0 * (d12 * d12 + d23 * d23 + d31 * d31) - 9.0 * trip * trip;

  // The first term's sign and the (n2.n3) dependence of the two single
  // (3m^2-2) terms are pinned by projecting the measured kernel difference
  // onto the {1, m, 3m^2-2} product basis; see the equivalence tests.
  Complex out = 0.0;
  out += leg(d23) / 36.0;
  out += Complex(0.0, -0.125) * m1 * d23 * trip;
  out += 0.125 * m1 * m2 * (3.0 * d23 * d31 - d12);
  out += 0.125 * m1 * m3 * (3.0 * d12 * d23 - d31);
  out += g1 / 144.0 * (spread + 4.0 * leg(d12) + 4.0 * leg(d31));
  out += g2 / 36.0 * (5.0 * leg(d23) + 2.0);
  out += g3 / 36.0 * (5.0 * leg(d23) + 2.0);
  out += Complex(0.0, -0.625) * m1 * g2 * d23 * trip;
  out += Complex(0.0, -0.625) * m1 * g3 * d23 * trip;
  out += Complex(0.0, -0.375) * g1 * m2 * d31 * trip;
  out += Complex(0.0, -0.375) * g1 * m3 * d12 * trip;
  out += 0.25 * m1 * m2 * g3 * d12;
  out += 0.25 * m1 * g2 * m3 * d31;
  out += g2 * g3 / 36.0;
  out += g1 * g2 / 144.0 * (2.0 * leg(d31) + 5.0 * spread);
  out += g1 * g3 / 144.0 * (2.0 * leg(d12) + 5.0 * spread);
  out += 5.0 / 72.0 * g1 * g2 * g3 * (leg(d12) + leg(d31));
  return out;
}

ComplexMatrix quantizer_residual_j1(const PhasePoint &x) {
  SpinQuantum j1(2);
  const double m = x.m.value();
  ComplexMatrix rot = rotation_operator(j1, x.n);
  Eigen::Vector3cd diag(1.0, -2.0, 1.0);
  ComplexMatrix out = rot * diag.asDiagonal() * rot.adjoint() / 6.0;
  out += (3.0 * m * m - 2.0) / 6.0 * ComplexMatrix::Identity(3, 3);
  return out;
}

ResidualReport sum_rule_check(SpinQuantum j, const SphereQuadrature &quad,
                              int x1_samples, int pointwise_samples, Rng &rng) {
  ResidualReport report;
  const int tj = j.twice();
  const int dim = j.dimension();

  auto random_point = [&] {
    return PhasePoint{SpinProjection(tj - 2 * rng.uniform_int(0, tj)),
                      rng.axis()};
  };

  for (int s = 0; s < pointwise_samples; ++s) {
    KernelPoint p{random_point(), random_point(), random_point()};
    double gap = std::abs(kernel_explicit(j, p) - kernel_cg(j, p));
    report.max_pointwise_gap = std::max(report.max_pointwise_gap, gap);
  }

  // Symbols of every matrix unit |a><b| over the grid: f_{|a><b|}(x) is the
  // dequantizer element U(x)_{b,a}, so sweeping all (a,b) pairs covers the
  // complete operator basis.
  const int grid = dim * quad.size();
  const int dim2 = dim * dim;
  std::vector<PhasePoint> points;
  std::vector<double> weights;
  std::vector<Eigen::VectorXcd> unit_symbols;
  points.reserve(grid);
  weights.reserve(grid);
  unit_symbols.reserve(grid);
  for (int node = 0; node < quad.size(); ++node)
    for (int r = 0; r < dim; ++r) {
      PhasePoint x{projection_at(j, r), quad.nodes()[node].axis};
      ComplexMatrix u = dequantizer(j, x);
      Eigen::VectorXcd f(dim2);
      for (int a = 0, e = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b, ++e)
          f(e) = u(b, a);
      points.push_back(x);
      weights.push_back(quad.nodes()[node].weight);
      unit_symbols.push_back(std::move(f));
    }

  for (int s = 0; s < x1_samples; ++s) {
    PhasePoint x1 = random_point();
    // integrated[e3, e2] = sum over grid pairs of w3 w2 f_{E3}(x3) f_{E2}(x2)
    // * (K'' - K')(x3, x2, x1), for all matrix-unit pairs at once.
    Eigen::MatrixXcd integrated = Eigen::MatrixXcd::Zero(dim2, dim2);
    for (int i3 = 0; i3 < grid; ++i3)
      for (int i2 = 0; i2 < grid; ++i2) {
        KernelPoint kp{points[i3], points[i2], x1};
        Complex diff = kernel_explicit(j, kp) - kernel_cg(j, kp);
        Complex w = weights[i3] * weights[i2] * diff;
        integrated.noalias() +=
            w * unit_symbols[i3] * unit_symbols[i2].transpose();
      }
    report.max_integrated_gap =
        std::max(report.max_integrated_gap, integrated.cwiseAbs().maxCoeff());
  }

  report.sample_count = pointwise_samples + x1_samples;
  return report;
}

nlohmann::json to_json(const ResidualReport &report) {
  return nlohmann::json{{"max_pointwise_gap", report.max_pointwise_gap},
                        {"max_integrated_gap", report.max_integrated_gap},
                        {"sample_count", report.sample_count}};
}

} // namespace spintomo
