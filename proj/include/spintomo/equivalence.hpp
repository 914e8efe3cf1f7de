#pragma once

#include <json.hpp>

#include "spintomo/kernels.hpp"
#include "spintomo/random.hpp"

namespace spintomo {

// Star-product kernel in its Clebsch-Gordan/Racah form: the triple sum over
// L1,L2,L3 <= 2j of CG coefficients, a 6j symbol, a 3j symbol and three
// Wigner D factors. Pointwise it differs from kernel_explicit for j >= 1 by
// a residual that vanishes under integration against tomographic symbols.
// Coefficient tables are memoized per spin (read-only after first use).
Complex kernel_cg(SpinQuantum j, const KernelPoint &p);

// Closed form of the j = 1 pointwise difference
// kernel_explicit - kernel_cg. Projections must be in {-1, 0, 1}.
Complex delta_j1(const KernelPoint &p);

// The two extra terms the exponential-form quantizer carries at j = 1
// relative to the minimal Clebsch-Gordan quantizer:
// (3m^2-2)/6 * I + (1/6) R(n) diag(1,-2,1) R(n)^dag. Integrates to zero
// against every tomogram.
ComplexMatrix quantizer_residual_j1(const PhasePoint &x);

struct ResidualReport {
  double max_pointwise_gap = 0.0;
  double max_integrated_gap = 0.0;
  int sample_count = 0;
};

// Compares kernel_cg with kernel_explicit both pointwise (random kernel
// points) and in the integrated sense, sweeping the complete matrix-unit
// symbol basis at `x1_samples` random x1 points on the given quadrature.
ResidualReport sum_rule_check(SpinQuantum j, const SphereQuadrature &quad,
                              int x1_samples, int pointwise_samples, Rng &rng);

nlohmann::json to_json(const ResidualReport &report);

} // namespace spintomo
