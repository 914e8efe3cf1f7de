#include "spintomo/su2_algebra.hpp"

#include <stdexcept>

#include "spintomo/numeric.hpp"

namespace spintomo {

AngularMomenta angular_momentum(SpinQuantum j) {
  const int dim = j.dimension();
  const double jv = j.value();

  ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
  for (int r = 0; r < dim; ++r)
    jz(r, r) = projection_at(j, r).value();

  // <m+1| J+ |m> = sqrt(j(j+1) - m(m+1)); superdiagonal under descending m.
  ComplexMatrix jplus = ComplexMatrix::Zero(dim, dim);
  for (int r = 1; r < dim; ++r) {
    double m = projection_at(j, r).value();
    jplus(r - 1, r) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
  }
  ComplexMatrix jminus = jplus.adjoint();

  AngularMomenta out;
  out.jx = 0.5 * (jplus + jminus);
  out.jy = Complex(0.0, -0.5) * (jplus - jminus);
  out.jz = std::move(jz);
  return out;
}

double wigner_small_d_element(int twice_j, int twice_mp, int twice_m,
                              double beta) {
  if (((twice_j - twice_m) % 2) != 0 || ((twice_j - twice_mp) % 2) != 0)
    throw std::invalid_argument("wigner_small_d_element: projection parity");
  if (std::abs(twice_m) > twice_j || std::abs(twice_mp) > twice_j)
    return 0.0;

  const int j_plus_m = (twice_j + twice_m) / 2;
  const int j_minus_m = (twice_j - twice_m) / 2;
  const int j_plus_mp = (twice_j + twice_mp) / 2;
  const int j_minus_mp = (twice_j - twice_mp) / 2;
  const int mp_minus_m = (twice_mp - twice_m) / 2;

  const double root = std::sqrt(factorial(j_plus_m) * factorial(j_minus_m) *
                                factorial(j_plus_mp) * factorial(j_minus_mp));
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);

  const int s_min = std::max(0, -mp_minus_m);
  const int s_max = std::min(j_minus_mp, j_plus_m);

  KahanSum sum;
  for (int k = s_min; k <= s_max; ++k) {
    double denom = factorial(k) * factorial(j_minus_mp - k) *
                   factorial(j_plus_m - k) * factorial(mp_minus_m + k);
    double term = parity_sign(k) / denom *
                  pow_int(c, twice_j - mp_minus_m - 2 * k) *
                  pow_int(-s, mp_minus_m + 2 * k);
    sum.add(term);
  }
  return root * sum.value();
}

ComplexMatrix wigner_small_d(SpinQuantum j, double beta) {
  const int dim = j.dimension();
  ComplexMatrix d(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      d(r, c) = wigner_small_d_element(j.twice(), projection_at(j, r).twice(),
                                       projection_at(j, c).twice(), beta);
  return d;
}

ComplexMatrix rotation_operator(SpinQuantum j, const UnitAxis &n) {
  const int dim = j.dimension();
  const double theta = n.theta();
  const double phi = n.phi();
  ComplexMatrix r(dim, dim);
  for (int row = 0; row < dim; ++row) {
    double mp = projection_at(j, row).value();
    for (int col = 0; col < dim; ++col) {
      double m = projection_at(j, col).value();
      double d = wigner_small_d_element(j.twice(), projection_at(j, row).twice(),
                                        projection_at(j, col).twice(), theta);
      r(row, col) = std::polar(1.0, -(mp - m) * phi) * d;
    }
  }
  return r;
}

ComplexMatrix axis_exponential(SpinQuantum j, const UnitAxis &n, double phi) {
  const int dim = j.dimension();
  ComplexMatrix rot = rotation_operator(j, n);
  ComplexVector diag(dim);
  for (int r = 0; r < dim; ++r)
    diag(r) = std::polar(1.0, -projection_at(j, r).value() * phi);
  return rot * diag.asDiagonal() * rot.adjoint();
}

} // namespace spintomo
