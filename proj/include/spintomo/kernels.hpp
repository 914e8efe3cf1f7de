#pragma once

#include <functional>

#include "spintomo/tomography.hpp"

namespace spintomo {

// Argument triple of the three-point star-product kernel K(x3, x2, x1). All
// three points live in the same spin-j phase space.
struct KernelPoint {
  PhasePoint x3, x2, x1;
};

// Generalized binomial coefficient C(r, q) = r (r-1) ... (r-q+1) / q! for
// real r and integer q; 0 for q < 0, 1 for q = 0.
double binomial_real(double r, int q);

// Ground-truth kernel K_j(x3,x2,x1) = Tr(D(x3) D(x2) U(x1)).
Complex kernel_trace(SpinQuantum j, const KernelPoint &p);

// Universal constituent sum T_j(x3,x2,x1,s3,s2,s1): every closed-form kernel
// below is an assembly of these. The sum runs over k = 0..floor(j) and weak
// 8-part compositions p1+...+p8 = 2j-2k, with three generalized binomial
// factors whose lower indices prune the enumeration.
Complex universal_T(SpinQuantum j, const KernelPoint &p, int s3, int s2,
                    int s1);

// Closed form of the star-product kernel,
// K_j = (2j+1)^2 sum_{s3,s2} T_j(..., s1=0); equals kernel_trace.
Complex kernel_explicit(SpinQuantum j, const KernelPoint &p);

// Two-point universal sum Q_j(x2,x1,s2,s1) (4-part compositions, single
// axis-product factor).
Complex universal_Q(SpinQuantum j, const PhasePoint &x2, const PhasePoint &x1,
                    int s2, int s1);

// Kernel of the unity operator on the tomogram set,
// K^delta_j = (2j+1) sum_{s2} Q_j(..., s1=0) = Tr(D(x2) U(x1)).
Complex delta_kernel(SpinQuantum j, const PhasePoint &x2, const PhasePoint &x1);
Complex delta_kernel_trace(SpinQuantum j, const PhasePoint &x2,
                           const PhasePoint &x1);

// Dual star-product kernel,
// K^d_j = (2j+1) sum_{s1} T_j(..., s3=0, s2=0) = Tr(U(x3) U(x2) D(x1)).
Complex dual_kernel(SpinQuantum j, const KernelPoint &p);
Complex dual_kernel_trace(SpinQuantum j, const KernelPoint &p);

// Kernels converting between ordinary and dual symbols:
//   ordinary->dual: Tr(D(x2) D(x1)) = (2j+1)^2 sum_{s2,s1} Q_j
//   dual->ordinary: Tr(U(x2) U(x1)) = Q_j(s2=0, s1=0)
enum class IntertwineDirection { ordinary_to_dual, dual_to_ordinary };
Complex intertwine_kernel(IntertwineDirection direction, SpinQuantum j,
                          const PhasePoint &x2, const PhasePoint &x1);
Complex intertwine_kernel_trace(IntertwineDirection direction, SpinQuantum j,
                                const PhasePoint &x2, const PhasePoint &x1);

// Brute-force Fourier-integral form: the kernel as the discretized
// (2j+1)^2/(2pi)^3 triple integral of U_{2j}(cos Phi/2) against the phase
// factors, on a grid_points^3 trapezoid grid. Slow; used as an independent
// cross-check of kernel_explicit.
Complex kernel_fourier(SpinQuantum j, const KernelPoint &p, int grid_points);

using KernelEvaluator = std::function<Complex(const KernelPoint &)>;
using TwoPointKernelEvaluator =
    std::function<Complex(const PhasePoint &, const PhasePoint &)>;

KernelEvaluator make_trace_kernel(SpinQuantum j);
KernelEvaluator make_explicit_kernel(SpinQuantum j);

// (fA * fB)(x1) = integral integral fA(x3) fB(x2) K(x3,x2,x1) dx2 dx3.
Complex star_product_at(const SymbolTable &fa, const SymbolTable &fb,
                        const KernelEvaluator &kernel, const PhasePoint &x1);
SymbolTable star_product(const SymbolTable &fa, const SymbolTable &fb,
                         const KernelEvaluator &kernel);

// g(x1) = integral f(x2) K(x2, x1) dx2 for two-point kernels.
Complex apply_two_point_kernel_at(const SymbolTable &f,
                                  const TwoPointKernelEvaluator &kernel,
                                  const PhasePoint &x1);
SymbolTable apply_two_point_kernel(const SymbolTable &f,
                                   const TwoPointKernelEvaluator &kernel);

// One step of the spin recurrence: K_{j+1/2}(N, m) assembled from K_j at
// half-unit-shifted projections and K_{j-1/2} at the original projections.
// `p` carries the spin-(j+1/2) projections; `j` is the spin of `kernel_j`
// and must be >= 1/2.
Complex kernel_recurrence_step(SpinQuantum j, const KernelEvaluator &kernel_j,
                               const KernelEvaluator &kernel_j_minus_half,
                               const KernelPoint &p);

// K_j obtained by chaining the recurrence down to the base kernels K_0 and
// K_{1/2} (closed form).
Complex kernel_via_recurrence(SpinQuantum j, const KernelPoint &p);

} // namespace spintomo
