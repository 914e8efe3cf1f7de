#include "spintomo/verify.hpp"

#include <stdexcept>

#include "spintomo/equivalence.hpp"
#include "spintomo/kernels.hpp"
#include "spintomo/rotation_composition.hpp"
#include "spintomo/su2_algebra.hpp"

namespace spintomo {

namespace {

std::string spin_label(SpinQuantum j) {
  if (j.twice() % 2 == 0)
    return "j=" + std::to_string(j.twice() / 2);
  return "j=" + std::to_string(j.twice()) + "/2";
}

class Battery {
public:
  explicit Battery(const VerifyOptions &opt) : opt_(opt) {}

  void record(const std::string &name, double gap, double default_tol) {
    double tol = opt_.tolerance.value_or(default_tol);
    report_.checks.push_back(CheckResult{name, gap, tol, gap <= tol});
  }

  // Pass condition inverted: the check asserts the gap is genuinely large.
  void record_nonzero(const std::string &name, double gap, double floor) {
    report_.checks.push_back(CheckResult{name, gap, floor, gap > floor});
  }

  int samples(int fallback) const {
    return opt_.samples > 0 ? opt_.samples : fallback;
  }

  SphereQuadrature quadrature(SpinQuantum j) const {
    int polar = opt_.quad_polar.value_or(j.twice() + 2);
    int azimuthal = opt_.quad_azimuthal.value_or(2 * j.twice() + 2);
    return SphereQuadrature::product_rule(polar, azimuthal);
  }

  ComplexMatrix random_operator(SpinQuantum j, Rng &rng) const {
    ComplexMatrix a(j.dimension(), j.dimension());
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c)
        a(r, c) = rng.normal_complex();
    return a;
  }

  PhasePoint random_point(SpinQuantum j, Rng &rng) const {
    return PhasePoint{
        SpinProjection(j.twice() - 2 * rng.uniform_int(0, j.twice())),
        rng.axis()};
  }

  KernelPoint random_kernel_point(SpinQuantum j, Rng &rng) const {
    return KernelPoint{random_point(j, rng), random_point(j, rng),
                       random_point(j, rng)};
  }

  const VerifyOptions &opt_;
  VerifyReport report_;
};

} // namespace

VerifyReport verify_tomography(const VerifyOptions &opt) {
  Battery b(opt);
  Rng rng(opt.seed);

  for (int tj : opt.twice_js) {
    SpinQuantum j(tj);
    const std::string tag = spin_label(j);
    SphereQuadrature quad = b.quadrature(j);

    // Dequantizer completeness: sum_m U(m, n) = identity.
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(100); ++s) {
        UnitAxis n = rng.axis();
        ComplexMatrix acc = ComplexMatrix::Zero(j.dimension(), j.dimension());
        for (int r = 0; r < j.dimension(); ++r)
          acc += dequantizer(j, PhasePoint{projection_at(j, r), n});
        acc -= ComplexMatrix::Identity(j.dimension(), j.dimension());
        gap = std::max(gap, acc.cwiseAbs().maxCoeff());
      }
      b.record("tomography/" + tag + "/dequantizer_completeness", gap, 1e-12);
    }

    // Tomogram normalization and nonnegativity on random states.
    {
      double norm_gap = 0.0, neg_gap = 0.0, sphere_gap = 0.0;
      for (int s = 0; s < b.samples(100); ++s) {
        DensityMatrix rho = DensityMatrix::random(j, rng);
        Tomogram w = tomogram(rho, quad);
        for (int node = 0; node < w.node_count(); ++node) {
          double col = 0.0, least = 0.0;
          for (int r = 0; r < w.projection_count(); ++r) {
            col += w.value(r, node).real();
            least = std::min(least, w.value(r, node).real());
          }
          norm_gap = std::max(norm_gap, std::abs(col - 1.0));
          neg_gap = std::max(neg_gap, -least);
        }
        // Fixed-m sphere average is 1/(2j+1).
        for (int r = 0; r < w.projection_count(); ++r) {
          Complex avg = 0.0;
          for (int node = 0; node < w.node_count(); ++node)
            avg += w.node_weight(node) * w.value(r, node);
          sphere_gap = std::max(
              sphere_gap, std::abs(avg - Complex(1.0 / j.dimension(), 0.0)));
        }
      }
      b.record("tomography/" + tag + "/tomogram_normalization", norm_gap, 1e-12);
      b.record("tomography/" + tag + "/tomogram_nonnegativity", neg_gap, 1e-12);
      b.record("tomography/" + tag + "/tomogram_sphere_marginal", sphere_gap,
               1e-12);
    }

    // Reconstruction round trip.
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(20); ++s) {
        DensityMatrix rho = DensityMatrix::random(j, rng);
        DensityMatrix back = reconstruct(tomogram(rho, quad));
        gap = std::max(gap,
                       (back.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
      }
      b.record("tomography/" + tag + "/reconstruction_round_trip", gap, 1e-10);
    }

    // Biorthogonality: integral f_A(x) f^d_B(x) dx = Tr(A B).
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(10); ++s) {
        ComplexMatrix a = b.random_operator(j, rng);
        ComplexMatrix bb = b.random_operator(j, rng);
        SymbolTable fa = symbol_table(a, j, quad);
        SymbolTable fbd = dual_symbol_table(bb, j, quad);
        Complex lhs = 0.0;
        for (int node = 0; node < fa.node_count(); ++node)
          for (int r = 0; r < fa.projection_count(); ++r)
            lhs += fa.node_weight(node) * fa.value(r, node) *
                   fbd.value(r, node);
        gap = std::max(gap, std::abs(lhs - (a * bb).trace()));
      }
      b.record("tomography/" + tag + "/symbol_biorthogonality", gap, 1e-10);
    }

    // Operator round trip through the symbol maps (both directions).
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(10); ++s) {
        ComplexMatrix a = b.random_operator(j, rng);
        ComplexMatrix via_ordinary =
            integrate_against_quantizer(symbol_table(a, j, quad));
        ComplexMatrix via_dual =
            integrate_against_dequantizer(dual_symbol_table(a, j, quad));
        gap = std::max(gap, (via_ordinary - a).cwiseAbs().maxCoeff());
        gap = std::max(gap, (via_dual - a).cwiseAbs().maxCoeff());
      }
      b.record("tomography/" + tag + "/symbol_inversion", gap, 1e-10);
    }

    // Average via dual symbols vs direct trace.
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(10); ++s) {
        DensityMatrix rho = DensityMatrix::random(j, rng);
        ComplexMatrix a = b.random_operator(j, rng);
        a = (a + a.adjoint().eval()) * 0.5;
        Complex via_tomo =
            average_via_dual(tomogram(rho, quad), dual_symbol_table(a, j, quad));
        Complex direct = (rho.matrix() * a).trace();
        gap = std::max(gap, std::abs(via_tomo - direct));
      }
      b.record("tomography/" + tag + "/average_via_dual", gap, 1e-10);
    }
  }
  return b.report_;
}

VerifyReport verify_kernels(const VerifyOptions &opt) {
  Battery b(opt);
  Rng rng(opt.seed + 1);

  for (int tj : opt.twice_js) {
    SpinQuantum j(tj);
    const std::string tag = spin_label(j);
    SphereQuadrature quad = b.quadrature(j);

    // Closed form vs trace, pointwise.
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(200); ++s) {
        KernelPoint p = b.random_kernel_point(j, rng);
        gap = std::max(gap, std::abs(kernel_explicit(j, p) - kernel_trace(j, p)));
      }
      b.record("kernels/" + tag + "/explicit_vs_trace", gap, 1e-9);
    }

    // conj(K(x3,x2,x1)) = K(x2,x3,x1) (Hermiticity of U and D).
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(50); ++s) {
        KernelPoint p = b.random_kernel_point(j, rng);
        KernelPoint swapped{p.x2, p.x3, p.x1};
        gap = std::max(gap, std::abs(std::conj(kernel_trace(j, p)) -
                                     kernel_trace(j, swapped)));
      }
      b.record("kernels/" + tag + "/conjugation_symmetry", gap, 1e-12);
    }

    // Delta kernel closed form vs trace, and its reproducing property.
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(100); ++s) {
        PhasePoint x2 = b.random_point(j, rng);
        PhasePoint x1 = b.random_point(j, rng);
        gap = std::max(gap, std::abs(delta_kernel(j, x2, x1) -
                                     delta_kernel_trace(j, x2, x1)));
      }
      b.record("kernels/" + tag + "/delta_closed_vs_trace", gap, 1e-10);

      double rep_gap = 0.0;
      auto delta = [j](const PhasePoint &x2, const PhasePoint &x1) {
        return delta_kernel(j, x2, x1);
      };
      for (int s = 0; s < b.samples(5); ++s) {
        Tomogram w = tomogram(DensityMatrix::random(j, rng), quad);
        SymbolTable back = apply_two_point_kernel(w, delta);
        rep_gap = std::max(rep_gap,
                           (back.values() - w.values()).cwiseAbs().maxCoeff());
      }
      b.record("kernels/" + tag + "/delta_reproducing", rep_gap, 1e-9);
    }

    // Dual kernel closed form vs trace.
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(50); ++s) {
        KernelPoint p = b.random_kernel_point(j, rng);
        gap = std::max(gap,
                       std::abs(dual_kernel(j, p) - dual_kernel_trace(j, p)));
      }
      b.record("kernels/" + tag + "/dual_closed_vs_trace", gap, 1e-9);
    }

    // Intertwining kernels: closed vs trace and the round trip
    // ordinary -> dual -> ordinary on a random symbol table.
    {
      double gap = 0.0;
      for (int s = 0; s < b.samples(50); ++s) {
        PhasePoint x2 = b.random_point(j, rng);
        PhasePoint x1 = b.random_point(j, rng);
        for (auto dir : {IntertwineDirection::ordinary_to_dual,
                         IntertwineDirection::dual_to_ordinary})
          gap = std::max(gap, std::abs(intertwine_kernel(dir, j, x2, x1) -
                                       intertwine_kernel_trace(dir, j, x2, x1)));
      }
      b.record("kernels/" + tag + "/intertwine_closed_vs_trace", gap, 1e-10);

      auto to_dual = [j](const PhasePoint &x2, const PhasePoint &x1) {
        return intertwine_kernel(IntertwineDirection::ordinary_to_dual, j, x2,
                                 x1);
      };
      auto to_ordinary = [j](const PhasePoint &x2, const PhasePoint &x1) {
        return intertwine_kernel(IntertwineDirection::dual_to_ordinary, j, x2,
                                 x1);
      };
      double rt_gap = 0.0;
      for (int s = 0; s < b.samples(3); ++s) {
        SymbolTable fa = symbol_table(b.random_operator(j, rng), j, quad);
        SymbolTable round =
            apply_two_point_kernel(apply_two_point_kernel(fa, to_dual),
                                   to_ordinary);
        rt_gap = std::max(rt_gap,
                          (round.values() - fa.values()).cwiseAbs().maxCoeff());
      }
      b.record("kernels/" + tag + "/intertwine_round_trip", rt_gap, 1e-9);
    }

    // Star product against the operator-product symbol.
    {
      double gap = 0.0;
      auto kernel = make_explicit_kernel(j);
      for (int s = 0; s < b.samples(5); ++s) {
        ComplexMatrix a = b.random_operator(j, rng);
        ComplexMatrix bb = b.random_operator(j, rng);
        SymbolTable fa = symbol_table(a, j, quad);
        SymbolTable fb = symbol_table(bb, j, quad);
        for (int t = 0; t < 5; ++t) {
          PhasePoint x1 = b.random_point(j, rng);
          Complex lhs = star_product_at(fa, fb, kernel, x1);
          Complex rhs = symbol(a * bb, j, x1);
          gap = std::max(gap, std::abs(lhs - rhs));
        }
      }
      b.record("kernels/" + tag + "/star_product_vs_operator_product", gap,
               1e-9);
    }

    // Character identity: trace of the composed rotation vs the Chebyshev
    // form evaluated at the composed half angle.
    {
      double gap = 0.0, pyth_gap = 0.0;
      for (int s = 0; s < b.samples(100); ++s) {
        RotationTriple t{rng.axis(), rng.axis(), rng.axis(),
                         rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi),
                         rng.uniform(0.0, kTwoPi)};
        double c = compose_cos_half_angle(t);
        Vector3 axis_sin = compose_axis_times_sin(t);
        pyth_gap = std::max(pyth_gap,
                            std::abs(c * c + axis_sin.squaredNorm() - 1.0));
        Complex tr = (axis_exponential(j, t.n3, t.phi3) *
                      axis_exponential(j, t.n2, t.phi2) *
                      axis_exponential(j, t.n1, t.phi1))
                         .trace();
        gap = std::max(gap, std::abs(tr - Complex(character(j, c), 0.0)));
      }
      b.record("kernels/" + tag + "/character_trace_identity", gap, 1e-11);
      b.record("kernels/" + tag + "/composition_pythagoras", pyth_gap, 1e-12);
    }

    // Brute-force Fourier transform of the Chebyshev character (slow).
    if (opt.slow && tj <= 2) {
      double gap = 0.0;
      for (int s = 0; s < b.samples(3); ++s) {
        KernelPoint p = b.random_kernel_point(j, rng);
        gap = std::max(gap, std::abs(kernel_fourier(j, p, 64) -
                                     kernel_explicit(j, p)));
      }
      b.record("kernels/" + tag + "/fourier_bruteforce_vs_explicit", gap, 2e-3);
    }
  }
  return b.report_;
}

VerifyReport verify_equivalence(const VerifyOptions &opt) {
  Battery b(opt);
  Rng rng(opt.seed + 2);

  for (int tj : opt.twice_js) {
    SpinQuantum j(tj);
    const std::string tag = spin_label(j);
    SphereQuadrature quad = b.quadrature(j);

    ResidualReport rr =
        sum_rule_check(j, quad, /*x1_samples=*/2, b.samples(50), rng);
    if (tj <= 1) {
      // j = 0 and j = 1/2: the two kernel families coincide pointwise.
      b.record("equivalence/" + tag + "/cg_pointwise_equality",
               rr.max_pointwise_gap, 1e-10);
    } else {
      b.record_nonzero("equivalence/" + tag + "/cg_pointwise_nonzero",
                       rr.max_pointwise_gap, 0.01);
    }
    double integrated_tol = (tj <= 2) ? 1e-9 : 1e-8;
    b.record("equivalence/" + tag + "/cg_integrated_equivalence",
             rr.max_integrated_gap, integrated_tol);

    if (tj == 2) {
      // Pointwise difference equals the closed-form residual.
      double gap = 0.0;
      for (int s = 0; s < b.samples(100); ++s) {
        KernelPoint p = b.random_kernel_point(j, rng);
        Complex diff = kernel_explicit(j, p) - kernel_cg(j, p);
        gap = std::max(gap, std::abs(diff - delta_j1(p)));
      }
      b.record("equivalence/" + tag + "/delta_closed_form", gap, 1e-9);

      // Quantizer residual integrates to zero against tomograms.
      double int_gap = 0.0, herm_gap = 0.0;
      for (int s = 0; s < b.samples(20); ++s) {
        Tomogram w = tomogram(DensityMatrix::random(j, rng), quad);
        ComplexMatrix acc = ComplexMatrix::Zero(3, 3);
        for (int node = 0; node < w.node_count(); ++node)
          for (int r = 0; r < w.projection_count(); ++r) {
            PhasePoint x = w.point(r, node);
            ComplexMatrix res = quantizer_residual_j1(x);
            herm_gap = std::max(herm_gap,
                                (res - res.adjoint().eval()).cwiseAbs().maxCoeff());
            acc += w.node_weight(node) * w.value(r, node) * res;
          }
        int_gap = std::max(int_gap, acc.cwiseAbs().maxCoeff());
      }
      b.record("equivalence/" + tag + "/quantizer_residual_integral", int_gap,
               1e-10);
      b.record("equivalence/" + tag + "/quantizer_residual_hermitian",
               herm_gap, 1e-13);
    }
  }
  return b.report_;
}

VerifyReport verify_recurrence(const VerifyOptions &opt) {
  Battery b(opt);
  Rng rng(opt.seed + 3);

  struct Case {
    int twice_j;
    double tol;
  };
  for (Case c : {Case{2, 1e-9}, Case{3, 1e-8}, Case{4, 1e-7}}) {
    SpinQuantum j(c.twice_j);
    double gap = 0.0;
    for (int s = 0; s < b.samples(50); ++s) {
      KernelPoint p = b.random_kernel_point(j, rng);
      gap = std::max(gap,
                     std::abs(kernel_via_recurrence(j, p) - kernel_trace(j, p)));
    }
    b.record("recurrence/" + spin_label(j) + "/chain_vs_trace", gap, c.tol);
  }
  return b.report_;
}

VerifyReport run_verify_suite(const std::string &suite,
                              const VerifyOptions &opt) {
  VerifyReport report;
  if (suite == "all" || suite == "tomography")
    report.merge(verify_tomography(opt));
  if (suite == "all" || suite == "kernels")
    report.merge(verify_kernels(opt));
  if (suite == "all" || suite == "equivalence")
    report.merge(verify_equivalence(opt));
  if (suite == "all" || suite == "recurrence")
    report.merge(verify_recurrence(opt));
  if (report.checks.empty() && suite != "all")
    throw std::invalid_argument("unknown verify suite: " + suite);
  return report;
}

nlohmann::json to_json(const VerifyReport &report, const VerifyOptions &opt) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto &c : report.checks)
    checks.push_back({{"name", c.name},
                      {"gap", c.gap},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  nlohmann::json twice_js = nlohmann::json::array();
  for (int tj : opt.twice_js)
    twice_js.push_back(tj);
  return nlohmann::json{{"type", "verify_report"},
                        {"seed", opt.seed},
                        {"twice_js", twice_js},
                        {"slow", opt.slow},
                        {"all_pass", report.all_pass()},
                        {"checks", checks}};
}

} // namespace spintomo
