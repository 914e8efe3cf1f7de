#include "spintomo/angular_coefficients.hpp"

#include <algorithm>
#include <vector>

#include "spintomo/su2_algebra.hpp"

namespace spintomo {

namespace {

bool projection_valid(int twice_j, int twice_m) {
  return std::abs(twice_m) <= twice_j && ((twice_j - twice_m) % 2) == 0;
}

// |j1 - j2| <= j3 <= j1 + j2 with integer perimeter.
bool triangle_valid(int twice_j1, int twice_j2, int twice_j3) {
  if ((twice_j1 + twice_j2 + twice_j3) % 2 != 0)
    return false;
  return twice_j3 >= std::abs(twice_j1 - twice_j2) &&
         twice_j3 <= twice_j1 + twice_j2;
}

double triangle_factor(int twice_a, int twice_b, int twice_c) {
  return factorial((twice_a + twice_b - twice_c) / 2) *
         factorial((twice_a - twice_b + twice_c) / 2) *
         factorial((-twice_a + twice_b + twice_c) / 2) /
         factorial((twice_a + twice_b + twice_c) / 2 + 1);
}

// The alternating Racah sums lose accuracy if small terms get swallowed
// early; adding in descending magnitude keeps the compensation effective.
double alternating_sum(std::vector<double> &terms) {
  std::sort(terms.begin(), terms.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  KahanSum sum;
  for (double t : terms)
    sum.add(t);
  return sum.value();
}

} // namespace

double clebsch_gordan(int twice_j1, int twice_m1, int twice_j2, int twice_m2,
                      int twice_J, int twice_M) {
  if (!projection_valid(twice_j1, twice_m1) ||
      !projection_valid(twice_j2, twice_m2) ||
      !projection_valid(twice_J, twice_M))
    return 0.0;
  if (twice_m1 + twice_m2 != twice_M)
    return 0.0;
  if (!triangle_valid(twice_j1, twice_j2, twice_J))
    return 0.0;

  const int g1 = (twice_j1 + twice_j2 - twice_J) / 2;
  const int x1m = (twice_j1 - twice_m1) / 2;
  const int x2p = (twice_j2 + twice_m2) / 2;
  const int a4 = (twice_J - twice_j2 + twice_m1) / 2;
  const int a5 = (twice_J - twice_j1 - twice_m2) / 2;

  const int k_min = std::max({0, -a4, -a5});
  const int k_max = std::min({g1, x1m, x2p});
  if (k_min > k_max)
    return 0.0;

  std::vector<double> terms;
  terms.reserve(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k) {
    double denom = factorial(k) * factorial(g1 - k) * factorial(x1m - k) *
                   factorial(x2p - k) * factorial(a4 + k) * factorial(a5 + k);
    terms.push_back(parity_sign(k) / denom);
  }
  double sum = alternating_sum(terms);

  double norm = std::sqrt(
      (twice_J + 1) * triangle_factor(twice_j1, twice_j2, twice_J) *
      factorial((twice_j1 + twice_m1) / 2) * factorial(x1m) *
      factorial(x2p) * factorial((twice_j2 - twice_m2) / 2) *
      factorial((twice_J + twice_M) / 2) * factorial((twice_J - twice_M) / 2));
  return norm * sum;
}

double wigner_3j(int twice_j1, int twice_j2, int twice_j3, int twice_m1,
                 int twice_m2, int twice_m3) {
  if (twice_m1 + twice_m2 + twice_m3 != 0)
    return 0.0;
  if (!triangle_valid(twice_j1, twice_j2, twice_j3))
    return 0.0;
  if (!projection_valid(twice_j3, twice_m3))
    return 0.0;
  double cg = clebsch_gordan(twice_j1, twice_m1, twice_j2, twice_m2, twice_j3,
                             -twice_m3);
  int phase_exp = (twice_j1 - twice_j2 - twice_m3) / 2;
  return parity_sign(phase_exp) * cg / std::sqrt(twice_j3 + 1.0);
}

double wigner_6j(int twice_j1, int twice_j2, int twice_j3, int twice_j4,
                 int twice_j5, int twice_j6) {
  if (!triangle_valid(twice_j1, twice_j2, twice_j3) ||
      !triangle_valid(twice_j1, twice_j5, twice_j6) ||
      !triangle_valid(twice_j4, twice_j2, twice_j6) ||
      !triangle_valid(twice_j4, twice_j5, twice_j3))
    return 0.0;

  const int t1 = (twice_j1 + twice_j2 + twice_j3) / 2;
  const int t2 = (twice_j1 + twice_j5 + twice_j6) / 2;
  const int t3 = (twice_j4 + twice_j2 + twice_j6) / 2;
  const int t4 = (twice_j4 + twice_j5 + twice_j3) / 2;
  const int q1 = (twice_j1 + twice_j2 + twice_j4 + twice_j5) / 2;
  const int q2 = (twice_j2 + twice_j3 + twice_j5 + twice_j6) / 2;
  const int q3 = (twice_j1 + twice_j3 + twice_j4 + twice_j6) / 2;

  const int k_min = std::max({t1, t2, t3, t4});
  const int k_max = std::min({q1, q2, q3});
  if (k_min > k_max)
    return 0.0;

  std::vector<double> terms;
  terms.reserve(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k) {
    double denom = factorial(k - t1) * factorial(k - t2) * factorial(k - t3) *
                   factorial(k - t4) * factorial(q1 - k) * factorial(q2 - k) *
                   factorial(q3 - k);
    terms.push_back(parity_sign(k) * factorial(k + 1) / denom);
  }
  double sum = alternating_sum(terms);

  double root = std::sqrt(triangle_factor(twice_j1, twice_j2, twice_j3) *
                          triangle_factor(twice_j1, twice_j5, twice_j6) *
                          triangle_factor(twice_j4, twice_j2, twice_j6) *
                          triangle_factor(twice_j4, twice_j5, twice_j3));
  return root * sum;
}

Complex wigner_D_element(int twice_L, int twice_mp, int twice_m, double alpha,
                         double beta, double gamma) {
  if (!projection_valid(twice_L, twice_mp) ||
      !projection_valid(twice_L, twice_m))
    return 0.0;
  double d = wigner_small_d_element(twice_L, twice_mp, twice_m, beta);
  double phase = -0.5 * twice_mp * alpha - 0.5 * twice_m * gamma;
  return std::polar(1.0, phase) * d;
}

} // namespace spintomo
