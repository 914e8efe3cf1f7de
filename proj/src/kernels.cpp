#include "spintomo/kernels.hpp"

#include <stdexcept>
#include <vector>

#include "spintomo/numeric.hpp"
#include "spintomo/rotation_composition.hpp"

namespace spintomo {

namespace {

double shift_prefactor(int s) { // 1/(1-3s^2) for s in {-1,0,1}
  return (s == 0) ? 1.0 : -0.5;
}

struct AxisProducts {
  double d12, d23, d31; // pairwise dot products
  double triple;        // n1 . (n2 x n3)
  Complex c8;           // 1 + d12 + d23 + d31 - i * triple
};

AxisProducts axis_products(const UnitAxis &n1, const UnitAxis &n2,
                           const UnitAxis &n3) {
  const Vector3 &a = n1.cartesian();
  const Vector3 &b = n2.cartesian();
  const Vector3 &c = n3.cartesian();
  AxisProducts out;
  out.d12 = a.dot(b);
  out.d23 = b.dot(c);
  out.d31 = c.dot(a);
  out.triple = a.dot(b.cross(c));
  out.c8 = Complex(1.0 + out.d12 + out.d23 + out.d31, -out.triple);
  return out;
}

void require_parity(SpinQuantum j, const PhasePoint &x, const char *where) {
  if (!x.m.same_parity(j))
    throw std::invalid_argument(std::string(where) +
                                ": projection parity mismatch");
}

// The kernel integrals carry the same band limit as reconstruction: degree
// 2j from each symbol factor.
void require_resolved(const SymbolTable &f, const char *where) {
  SpinQuantum j = f.spin();
  if (f.quadrature().polar_order() < j.twice() + 1 ||
      f.quadrature().azimuthal_order() < 2 * j.twice() + 1)
    throw std::invalid_argument(
        std::string(where) +
        ": quadrature under-resolved (need L >= 2j+1, M >= 4j+1)");
}

} // namespace

double binomial_real(double r, int q) {
  if (q < 0)
    return 0.0;
  if (q == 0)
    return 1.0;
  double prod = 1.0;
  for (int i = 0; i < q; ++i)
    prod *= (r - i);
  return prod / factorial(q);
}

Complex kernel_trace(SpinQuantum j, const KernelPoint &p) {
  return (quantizer(j, p.x3) * quantizer(j, p.x2) * dequantizer(j, p.x1))
      .trace();
}

Complex universal_T(SpinQuantum j, const KernelPoint &p, int s3, int s2,
                    int s1) {
  require_parity(j, p.x1, "universal_T");
  require_parity(j, p.x2, "universal_T");
  require_parity(j, p.x3, "universal_T");

  const int twice_j = j.twice();
  // Integer pieces of the binomial indices: h_i = j - m_i.
  const int h1 = (twice_j - p.x1.m.twice()) / 2;
  const int h2 = (twice_j - p.x2.m.twice()) / 2;
  const int h3 = (twice_j - p.x3.m.twice()) / 2;
  // Upper indices -j - m_i - s_i + k - 1 (without the k).
  const int u1 = -(twice_j + p.x1.m.twice()) / 2 - s1 - 1;
  const int u2 = -(twice_j + p.x2.m.twice()) / 2 - s2 - 1;
  const int u3 = -(twice_j + p.x3.m.twice()) / 2 - s3 - 1;

  const AxisProducts ax = axis_products(p.x1.n, p.x2.n, p.x3.n);

  KahanComplexSum total;
  for (int k = 0; k <= twice_j / 2; ++k) {
    const int n = twice_j - 2 * k; // composition size
    const int cap1 = h1 - s1 - k;
    const int cap2 = h2 - s2 - k;
    const int cap3 = h3 - s3 - k;
    if (cap1 < 0 || cap2 < 0 || cap3 < 0)
      continue; // every binomial lower index would be negative

    const double k_factor =
        parity_sign(k) * factorial(twice_j - k) / factorial(k);
    const double b_u1 = static_cast<double>(u1 + k);
    const double b_u2 = static_cast<double>(u2 + k);
    const double b_u3 = static_cast<double>(u3 + k);

    // Weak compositions p1+...+p8 = n, pruned so that all three binomial
    // lower indices stay non-negative (anything else vanishes).
    for (int p1 = 0; p1 <= std::min({n, cap1, cap2, cap3}); ++p1) {
      int r1 = n - p1;
      for (int p2 = 0; p2 <= std::min({r1, cap1 - p1, cap2 - p1}); ++p2) {
        int r2 = r1 - p2;
        for (int p3 = 0; p3 <= std::min({r2, cap2 - p1 - p2, cap3 - p1});
             ++p3) {
          int r3 = r2 - p3;
          for (int p4 = 0;
               p4 <= std::min({r3, cap1 - p1 - p2, cap3 - p1 - p3}); ++p4) {
            int r4 = r3 - p4;
            for (int p5 = 0; p5 <= std::min(r4, cap1 - p1 - p2 - p4); ++p5) {
              int r5 = r4 - p5;
              for (int p6 = 0; p6 <= std::min(r5, cap2 - p1 - p2 - p3);
                   ++p6) {
                int r6 = r5 - p6;
                for (int p7 = 0; p7 <= std::min(r6, cap3 - p1 - p3 - p4);
                     ++p7) {
                  const int p8 = r6 - p7;
                  const int q1 = cap1 - p1 - p2 - p4 - p5;
                  const int q2 = cap2 - p1 - p2 - p3 - p6;
                  const int q3 = cap3 - p1 - p3 - p4 - p7;

                  double b = binomial_real(b_u1, q1) * binomial_real(b_u2, q2) *
                             binomial_real(b_u3, q3);
                  if (b == 0.0)
                    continue;

                  double scale =
                      k_factor /
                      (factorial(p1) * factorial(p2) * factorial(p3) *
                       factorial(p4) * factorial(p5) * factorial(p6) *
                       factorial(p7) * factorial(p8));
                  // 1 / 2^{-p1+p5+p6+p7+2 p8}
                  scale = std::ldexp(scale, p1 - p5 - p6 - p7 - 2 * p8);

                  Complex term = scale * b * pow_int(1.0 + ax.d23, p5) *
                                 pow_int(1.0 + ax.d31, p6) *
                                 pow_int(1.0 + ax.d12, p7) *
                                 pow_int(ax.c8, p8);
                  total.add(term);
                }
              }
            }
          }
        }
      }
    }
  }

  double pref =
      shift_prefactor(s3) * shift_prefactor(s2) * shift_prefactor(s1);
  return pref * total.value();
}

Complex kernel_explicit(SpinQuantum j, const KernelPoint &p) {
  const double dim2 = static_cast<double>(j.dimension()) * j.dimension();
  KahanComplexSum sum;
  for (int s3 = -1; s3 <= 1; ++s3)
    for (int s2 = -1; s2 <= 1; ++s2)
      sum.add(universal_T(j, p, s3, s2, 0));
  return dim2 * sum.value();
}

Complex universal_Q(SpinQuantum j, const PhasePoint &x2, const PhasePoint &x1,
                    int s2, int s1) {
  require_parity(j, x1, "universal_Q");
  require_parity(j, x2, "universal_Q");

  const int twice_j = j.twice();
  const int h1 = (twice_j - x1.m.twice()) / 2;
  const int h2 = (twice_j - x2.m.twice()) / 2;
  const int u1 = -(twice_j + x1.m.twice()) / 2 - s1 - 1;
  const int u2 = -(twice_j + x2.m.twice()) / 2 - s2 - 1;

  const double d12 = x1.n.cartesian().dot(x2.n.cartesian());

  KahanComplexSum total;
  for (int k = 0; k <= twice_j / 2; ++k) {
    const int n = twice_j - 2 * k;
    const int cap1 = h1 - s1 - k;
    const int cap2 = h2 - s2 - k;
    if (cap1 < 0 || cap2 < 0)
      continue;

    const double k_factor =
        parity_sign(k) * factorial(twice_j - k) / factorial(k);
    const double b_u1 = static_cast<double>(u1 + k);
    const double b_u2 = static_cast<double>(u2 + k);

    for (int p1 = 0; p1 <= std::min({n, cap1, cap2}); ++p1) {
      int r1 = n - p1;
      for (int p2 = 0; p2 <= std::min(r1, cap1 - p1); ++p2) {
        int r2 = r1 - p2;
        for (int p3 = 0; p3 <= std::min(r2, cap2 - p1); ++p3) {
          const int p4 = r2 - p3;
          const int q1 = cap1 - p1 - p2;
          const int q2 = cap2 - p1 - p3;

          double b = binomial_real(b_u1, q1) * binomial_real(b_u2, q2);
          if (b == 0.0)
            continue;

          double scale = k_factor / (factorial(p1) * factorial(p2) *
                                     factorial(p3) * factorial(p4));
          scale = std::ldexp(scale, p1 - p4); // 1 / 2^{-p1+p4}
          total.add(scale * b * pow_int(1.0 + d12, p4));
        }
      }
    }
  }

  return shift_prefactor(s2) * shift_prefactor(s1) * total.value();
}

Complex delta_kernel(SpinQuantum j, const PhasePoint &x2,
                     const PhasePoint &x1) {
  KahanComplexSum sum;
  for (int s2 = -1; s2 <= 1; ++s2)
    sum.add(universal_Q(j, x2, x1, s2, 0));
  return static_cast<double>(j.dimension()) * sum.value();
}

Complex delta_kernel_trace(SpinQuantum j, const PhasePoint &x2,
                           const PhasePoint &x1) {
  return (quantizer(j, x2) * dequantizer(j, x1)).trace();
}

Complex dual_kernel(SpinQuantum j, const KernelPoint &p) {
  KahanComplexSum sum;
  for (int s1 = -1; s1 <= 1; ++s1)
    sum.add(universal_T(j, p, 0, 0, s1));
  return static_cast<double>(j.dimension()) * sum.value();
}

Complex dual_kernel_trace(SpinQuantum j, const KernelPoint &p) {
  return (dequantizer(j, p.x3) * dequantizer(j, p.x2) * quantizer(j, p.x1))
      .trace();
}

Complex intertwine_kernel(IntertwineDirection direction, SpinQuantum j,
                          const PhasePoint &x2, const PhasePoint &x1) {
  if (direction == IntertwineDirection::dual_to_ordinary)
    return universal_Q(j, x2, x1, 0, 0);
  const double dim2 = static_cast<double>(j.dimension()) * j.dimension();
  KahanComplexSum sum;
  for (int s2 = -1; s2 <= 1; ++s2)
    for (int s1 = -1; s1 <= 1; ++s1)
      sum.add(universal_Q(j, x2, x1, s2, s1));
  return dim2 * sum.value();
}

Complex intertwine_kernel_trace(IntertwineDirection direction, SpinQuantum j,
                                const PhasePoint &x2, const PhasePoint &x1) {
  if (direction == IntertwineDirection::dual_to_ordinary)
    return (dequantizer(j, x2) * dequantizer(j, x1)).trace();
  return (quantizer(j, x2) * quantizer(j, x1)).trace();
}

Complex kernel_fourier(SpinQuantum j, const KernelPoint &p, int grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("kernel_fourier: grid too small");
  const int n = grid_points;
  const double m1 = p.x1.m.value();
  const double m2 = p.x2.m.value();
  const double m3 = p.x3.m.value();

  // Per-axis tables: angles, half-angle trig, projection phases, and the
  // s-summed shift factor sum_s e^{i s phi}/(1-3s^2) = 1 - cos(phi).
  std::vector<double> ang(n), ch(n), sh(n), shift(n);
  std::vector<Complex> ph1(n), ph2(n), ph3(n);
  for (int a = 0; a < n; ++a) {
    ang[a] = kTwoPi * a / n;
    ch[a] = std::cos(0.5 * ang[a]);
    sh[a] = std::sin(0.5 * ang[a]);
    shift[a] = 1.0 - std::cos(ang[a]);
    ph1[a] = std::polar(1.0, m1 * ang[a]);
    ph2[a] = std::polar(1.0, m2 * ang[a]);
    ph3[a] = std::polar(1.0, m3 * ang[a]);
  }

  const AxisProducts ax = axis_products(p.x1.n, p.x2.n, p.x3.n);

  KahanComplexSum total;
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      const double c12 = ch[a1] * ch[a2];
      const double s12 = sh[a1] * sh[a2];
      const double cs = ch[a1] * sh[a2];
      const double sc = sh[a1] * ch[a2];
      const Complex ph12 = ph1[a1] * ph2[a2] * shift[a2];
      for (int a3 = 0; a3 < n; ++a3) {
        double cos_half = c12 * ch[a3] - ax.d12 * s12 * ch[a3] -
                          ax.d23 * cs * sh[a3] - ax.d31 * sc * sh[a3] +
                          ax.triple * s12 * sh[a3];
        double u = chebyshev_u(j.twice(), std::clamp(cos_half, -1.0, 1.0));
        total.add(u * ph12 * ph3[a3] * shift[a3]);
      }
    }
  }

  const double dim2 = static_cast<double>(j.dimension()) * j.dimension();
  const double cell = 1.0 / (static_cast<double>(n) * n * n);
  return dim2 * cell * total.value();
}

KernelEvaluator make_trace_kernel(SpinQuantum j) {
  return [j](const KernelPoint &p) { return kernel_trace(j, p); };
}

KernelEvaluator make_explicit_kernel(SpinQuantum j) {
  return [j](const KernelPoint &p) { return kernel_explicit(j, p); };
}

Complex star_product_at(const SymbolTable &fa, const SymbolTable &fb,
                        const KernelEvaluator &kernel, const PhasePoint &x1) {
  if (!fa.same_grid(fb))
    throw std::invalid_argument("star_product: grid mismatch");
  require_resolved(fa, "star_product");
  KahanComplexSum sum;
  for (int node3 = 0; node3 < fa.node_count(); ++node3)
    for (int r3 = 0; r3 < fa.projection_count(); ++r3) {
      Complex fa_w = fa.node_weight(node3) * fa.value(r3, node3);
      if (fa_w == Complex(0.0, 0.0))
        continue;
      PhasePoint x3 = fa.point(r3, node3);
      for (int node2 = 0; node2 < fb.node_count(); ++node2)
        for (int r2 = 0; r2 < fb.projection_count(); ++r2) {
          PhasePoint x2 = fb.point(r2, node2);
          Complex k = kernel(KernelPoint{x3, x2, x1});
          sum.add(fa_w * fb.node_weight(node2) * fb.value(r2, node2) * k);
        }
    }
  return sum.value();
}

SymbolTable star_product(const SymbolTable &fa, const SymbolTable &fb,
                         const KernelEvaluator &kernel) {
  if (!fa.same_grid(fb))
    throw std::invalid_argument("star_product: grid mismatch");
  Eigen::MatrixXcd values(fa.projection_count(), fa.node_count());
  for (int node = 0; node < fa.node_count(); ++node)
    for (int r = 0; r < fa.projection_count(); ++r)
      values(r, node) = star_product_at(fa, fb, kernel, fa.point(r, node));
  return SymbolTable(fa.spin(), fa.quadrature(), std::move(values));
}

Complex apply_two_point_kernel_at(const SymbolTable &f,
                                  const TwoPointKernelEvaluator &kernel,
                                  const PhasePoint &x1) {
  require_resolved(f, "apply_two_point_kernel");
  KahanComplexSum sum;
  for (int node = 0; node < f.node_count(); ++node)
    for (int r = 0; r < f.projection_count(); ++r)
      sum.add(f.node_weight(node) * f.value(r, node) *
              kernel(f.point(r, node), x1));
  return sum.value();
}

SymbolTable apply_two_point_kernel(const SymbolTable &f,
                                   const TwoPointKernelEvaluator &kernel) {
  Eigen::MatrixXcd values(f.projection_count(), f.node_count());
  for (int node = 0; node < f.node_count(); ++node)
    for (int r = 0; r < f.projection_count(); ++r)
      values(r, node) = apply_two_point_kernel_at(f, kernel, f.point(r, node));
  return SymbolTable(f.spin(), f.quadrature(), std::move(values));
}

Complex kernel_recurrence_step(SpinQuantum j, const KernelEvaluator &kernel_j,
                               const KernelEvaluator &kernel_j_minus_half,
                               const KernelPoint &p) {
  if (j.twice() < 1)
    throw std::invalid_argument("kernel_recurrence_step: needs j >= 1/2");

  const UnitAxis axes[3] = {p.x1.n, p.x2.n, p.x3.n};
  const int tm[3] = {p.x1.m.twice(), p.x2.m.twice(), p.x3.m.twice()};
  const AxisProducts ax = axis_products(p.x1.n, p.x2.n, p.x3.n);
  const double dots[3][3] = {{0.0, ax.d12, ax.d31},
                             {ax.d12, 0.0, ax.d23},
                             {ax.d31, ax.d23, 0.0}};

  auto eval_shifted = [&](int dm1, int dm2, int dm3) { // shifts in twice-units
    KernelPoint q{PhasePoint{SpinProjection(tm[2] + dm3), axes[2]},
                  PhasePoint{SpinProjection(tm[1] + dm2), axes[1]},
                  PhasePoint{SpinProjection(tm[0] + dm1), axes[0]}};
    return kernel_j(q);
  };

  KahanComplexSum bracket;

  // All three projections shifted up by 1/2.
  bracket.add(eval_shifted(1, 1, 1));

  // One free +-1/2 shift, the other two fixed at +1/2.
  for (int h = 0; h < 3; ++h) {
    for (int nu = -1; nu <= 1; nu += 2) {
      int d[3] = {1, 1, 1};
      d[h] = nu;
      double sign = (nu == 1) ? -1.0 : 1.0;
      bracket.add(0.5 * sign * eval_shifted(d[0], d[1], d[2]));
    }
  }

  // Two free shifts on a pair (k, l), weighted by 1 + n_k . n_l.
  for (int kk = 0; kk < 3; ++kk) {
    for (int ll = kk + 1; ll < 3; ++ll) {
      int h = 3 - kk - ll;
      double w = 0.25 * (1.0 + dots[kk][ll]);
      for (int nuk = -1; nuk <= 1; nuk += 2)
        for (int nul = -1; nul <= 1; nul += 2) {
          int d[3];
          d[h] = 1;
          d[kk] = nuk;
          d[ll] = nul;
          double sign = (nuk == nul) ? 1.0 : -1.0;
          bracket.add(w * sign * eval_shifted(d[0], d[1], d[2]));
        }
    }
  }

  // All three free, weighted by the complex axis factor.
  for (int nu1 = -1; nu1 <= 1; nu1 += 2)
    for (int nu2 = -1; nu2 <= 1; nu2 += 2)
      for (int nu3 = -1; nu3 <= 1; nu3 += 2) {
        int plus_count = (nu1 == 1) + (nu2 == 1) + (nu3 == 1);
        bracket.add(0.125 * parity_sign(plus_count) * ax.c8 *
                    eval_shifted(nu1, nu2, nu3));
      }

  const double tj = j.twice(); // 2j
  const double lead = (tj + 2.0) / (tj + 1.0);
  const double tail = (tj + 2.0) / tj;
  return 2.0 * lead * lead * bracket.value() -
         tail * tail * kernel_j_minus_half(p);
}

Complex kernel_via_recurrence(SpinQuantum j, const KernelPoint &p) {
  if (j.twice() <= 1)
    return kernel_explicit(j, p);
  SpinQuantum j_mid(j.twice() - 1);
  SpinQuantum j_low(j.twice() - 2);
  auto mid = [j_mid](const KernelPoint &q) {
    return kernel_via_recurrence(j_mid, q);
  };
  auto low = [j_low](const KernelPoint &q) {
    return kernel_via_recurrence(j_low, q);
  };
  return kernel_recurrence_step(j_mid, mid, low, p);
}

} // namespace spintomo
