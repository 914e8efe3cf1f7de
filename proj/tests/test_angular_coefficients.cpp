#include <doctest.h>

#include <map>
#include <numeric>
#include <vector>

#include "test_helpers.hpp"

using namespace spintomo;
namespace tt = spintomo::testing;

namespace {

// Exact rational arithmetic on __int128, enough for the small factorials in
// the j <= 2 coupling range.
struct Rational {
  __int128 num = 0;
  __int128 den = 1;

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0)
      a = -a;
    if (b < 0)
      b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num, den);
    num /= g;
    den /= g;
  }

  Rational operator+(const Rational &o) const {
    Rational r{num * o.den + o.num * den, den * o.den};
    r.reduce();
    return r;
  }
  Rational operator*(const Rational &o) const {
    Rational r{num * o.num, den * o.den};
    r.reduce();
    return r;
  }
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  int sign() const { return num == 0 ? 0 : (num > 0 ? 1 : -1); }
};

__int128 ifact(int n) {
  __int128 f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

// Exact-rational Racah sum: returns (cg^2 as a rational, sign of cg).
std::pair<Rational, int> cg_squared_exact(int tj1, int tm1, int tj2, int tm2,
                                          int tJ, int tM) {
  REQUIRE(tm1 + tm2 == tM);
  const int g1 = (tj1 + tj2 - tJ) / 2;
  const int x1m = (tj1 - tm1) / 2;
  const int x2p = (tj2 + tm2) / 2;
  const int a4 = (tJ - tj2 + tm1) / 2;
  const int a5 = (tJ - tj1 - tm2) / 2;
  const int k_min = std::max({0, -a4, -a5});
  const int k_max = std::min({g1, x1m, x2p});
  REQUIRE(k_min <= k_max);

  Rational sum;
  for (int k = k_min; k <= k_max; ++k) {
    __int128 d = ifact(k) * ifact(g1 - k) * ifact(x1m - k) * ifact(x2p - k) *
                 ifact(a4 + k) * ifact(a5 + k);
    Rational term{(k % 2 == 0) ? 1 : -1, d};
    sum = sum + term;
  }

  Rational norm2{
      (tJ + 1) * ifact(g1) * ifact((tj1 - tj2 + tJ) / 2) *
          ifact((-tj1 + tj2 + tJ) / 2),
      ifact((tj1 + tj2 + tJ) / 2 + 1)};
  norm2 = norm2 * Rational{ifact((tj1 + tm1) / 2) * ifact(x1m), 1};
  norm2 = norm2 * Rational{ifact(x2p) * ifact((tj2 - tm2) / 2), 1};
  norm2 = norm2 * Rational{ifact((tJ + tM) / 2) * ifact((tJ - tM) / 2), 1};

  return {norm2 * sum * sum, sum.sign()};
}

} // namespace

TEST_CASE("Clebsch-Gordan: exact rational oracle over the j <= 2 range") {
  // Includes the pinned value <1/2 1/2; 1/2 -1/2 | 0 0> = +1/sqrt(2).
  double pinned = clebsch_gordan(1, 1, 1, -1, 0, 0);
  CHECK(pinned == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  int checked = 0;
  for (int tj1 = 0; tj1 <= 4; ++tj1)
    for (int tj2 = 0; tj2 <= 4; ++tj2)
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
          for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
            int tM = tm1 + tm2;
            if (std::abs(tM) > tJ)
              continue;
            auto [sq, sign] = cg_squared_exact(tj1, tm1, tj2, tm2, tJ, tM);
            double cg = clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM);
            CHECK(std::abs(cg * cg - sq.to_double()) < 1e-14);
            if (sq.num != 0)
              CHECK(cg * sign > 0.0);
            ++checked;
          }
  CHECK(checked > 300);
}

TEST_CASE("Clebsch-Gordan: selection rules give zero") {
  CHECK(clebsch_gordan(2, 2, 2, 2, 2, 2) == 0.0); // m1+m2 != M
  CHECK(clebsch_gordan(1, 1, 1, 1, 0, 2) == 0.0); // M out of range
  CHECK(clebsch_gordan(1, 1, 1, 1, 6, 2) == 0.0); // triangle violation
  CHECK(clebsch_gordan(2, 1, 2, 1, 4, 2) == 0.0); // parity violation
  // L > 2j: the kernel sums rely on these vanishing.
  for (int extra = 1; extra <= 2; ++extra)
    CHECK(clebsch_gordan(2, 0, 2, 0, 4 + 2 * extra, 0) == 0.0);
}

TEST_CASE("Clebsch-Gordan: orthogonality over the coupled labels") {
  for (int tj1 : {1, 2, 3, 4})
    for (int tj2 : {1, 2, 3, 4}) {
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2)
          for (int tM = -std::min(tJ, tJp); tM <= std::min(tJ, tJp); tM += 2) {
            double acc = 0.0;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
              int tm2 = tM - tm1;
              if (std::abs(tm2) > tj2)
                continue;
              acc += clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM) *
                     clebsch_gordan(tj1, tm1, tj2, tm2, tJp, tM);
            }
            double expected = (tJ == tJp) ? 1.0 : 0.0;
            CHECK(std::abs(acc - expected) < 1e-12);
          }
    }
}

TEST_CASE("3j: selection, symmetry, orthogonality") {
  auto rng = tt::seeded_rng("threej", 31);

  CHECK(wigner_3j(2, 2, 2, 2, 2, 2) == 0.0); // m-sum violation

  int nonzero = 0;
  for (int rep = 0; rep < 200; ++rep) {
    int tj1 = rng.uniform_int(0, 4);
    int tj2 = rng.uniform_int(0, 4);
    int tj3_lo = std::abs(tj1 - tj2), tj3_hi = tj1 + tj2;
    int steps = (tj3_hi - tj3_lo) / 2;
    int tj3 = tj3_lo + 2 * rng.uniform_int(0, steps);
    int tm1 = -tj1 + 2 * rng.uniform_int(0, tj1);
    int tm2 = -tj2 + 2 * rng.uniform_int(0, tj2);
    int tm3 = -tm1 - tm2;
    if (std::abs(tm3) > tj3)
      continue;

    double v = wigner_3j(tj1, tj2, tj3, tm1, tm2, tm3);
    if (v != 0.0)
      ++nonzero;

    // Cyclic column permutations leave the symbol unchanged.
    CHECK(std::abs(v - wigner_3j(tj2, tj3, tj1, tm2, tm3, tm1)) < 1e-13);
    CHECK(std::abs(v - wigner_3j(tj3, tj1, tj2, tm3, tm1, tm2)) < 1e-13);

    // Odd permutation and m-reflection both scale by (-1)^{j1+j2+j3}.
    double odd_sign = parity_sign((tj1 + tj2 + tj3) / 2);
    CHECK(std::abs(odd_sign * v - wigner_3j(tj2, tj1, tj3, tm2, tm1, tm3)) <
          1e-13);
    CHECK(std::abs(odd_sign * v -
                   wigner_3j(tj1, tj2, tj3, -tm1, -tm2, -tm3)) < 1e-13);

    // Defining relation against the rationally-verified CG value.
    double cg = clebsch_gordan(tj1, tm1, tj2, tm2, tj3, -tm3);
    double expected = parity_sign((tj1 - tj2 - tm3) / 2) * cg /
                      std::sqrt(tj3 + 1.0);
    CHECK(std::abs(v - expected) < 1e-12);
  }
  CHECK(nonzero > 50);

  // Orthogonality: the full (m1, m2) sum of 3j products collapses to a
  // Kronecker delta in the coupled label.
  for (int tj3 : {0, 2, 4})
    for (int tj3p : {0, 2, 4}) {
      double acc = 0.0;
      for (int tm1 = -2; tm1 <= 2; tm1 += 2)
        for (int tm2 = -2; tm2 <= 2; tm2 += 2) {
          int tm3 = -tm1 - tm2;
          if (std::abs(tm3) > std::min(tj3, tj3p))
            continue;
          acc += wigner_3j(2, 2, tj3, tm1, tm2, tm3) *
                 wigner_3j(2, 2, tj3p, tm1, tm2, tm3);
        }
      double expected = (tj3 == tj3p) ? 1.0 : 0.0;
      CHECK(std::abs(acc - expected) < 1e-13);
    }
}

namespace {

// Dense recoupling oracle: couple three spins (a, b, c) to total (J, M)
// through the two schemes and compare the basis overlap with its 6j form.
void check_recoupling(int ta, int tb, int tc) {
  const int da = ta + 1, db = tb + 1, dc = tc + 1;
  auto index = [&](int ia, int ib, int ic) { return (ia * db + ib) * dc + ic; };

  for (int tx = std::abs(ta - tb); tx <= ta + tb; tx += 2)
    for (int ty = std::abs(tb - tc); ty <= tb + tc; ty += 2)
      for (int tJ = std::abs(tx - tc); tJ <= tx + tc; tJ += 2) {
        if (tJ < std::abs(ta - ty) || tJ > ta + ty)
          continue;
        const int tM = tJ; // overlap is M-independent; use the top state

        Eigen::VectorXcd left = Eigen::VectorXcd::Zero(da * db * dc);
        Eigen::VectorXcd right = Eigen::VectorXcd::Zero(da * db * dc);
        for (int tma = -ta; tma <= ta; tma += 2)
          for (int tmb = -tb; tmb <= tb; tmb += 2)
            for (int tmc = -tc; tmc <= tc; tmc += 2) {
              if (tma + tmb + tmc != tM)
                continue;
              int id = index((ta - tma) / 2, (tb - tmb) / 2, (tc - tmc) / 2);
              left(id) = clebsch_gordan(ta, tma, tb, tmb, tx, tma + tmb) *
                         clebsch_gordan(tx, tma + tmb, tc, tmc, tJ, tM);
              right(id) = clebsch_gordan(tb, tmb, tc, tmc, ty, tmb + tmc) *
                          clebsch_gordan(ta, tma, ty, tmb + tmc, tJ, tM);
            }

        Complex overlap = left.dot(right); // conjugates left; all real
        double expected = parity_sign((ta + tb + tc + tJ) / 2) *
                          std::sqrt((tx + 1.0) * (ty + 1.0)) *
                          wigner_6j(ta, tb, tx, tc, tJ, ty);
        CHECK(std::abs(overlap.real() - expected) < 1e-11);
        CHECK(std::abs(overlap.imag()) < 1e-14);
      }
}

} // namespace

TEST_CASE("6j: dense recoupling-matrix oracle") {
  check_recoupling(1, 1, 1);
  check_recoupling(2, 1, 1);
  check_recoupling(2, 2, 2);
  check_recoupling(3, 2, 1);
  check_recoupling(3, 3, 3);
  check_recoupling(4, 3, 2);
}

TEST_CASE("6j: orthogonality sum rule over the recoupling label") {
  // sum_x (2x+1)(2p+1) {a b x; c d p} {a b x; c d q} = delta_{pq} whenever
  // the (a d p) and (b c p) triads exist.
  for (int a : {1, 2, 3})
    for (int b : {1, 2, 3})
      for (int c : {1, 2})
        for (int d : {1, 2, 3}) {
          for (int p = std::abs(a - d); p <= a + d; p += 2)
            for (int q = std::abs(a - d); q <= a + d; q += 2) {
              // Both (a d p) and (b c p) triads must close, parity included.
              if (p < std::abs(b - c) || p > b + c || q < std::abs(b - c) ||
                  q > b + c || ((b + c + p) % 2) != 0 || ((b + c + q) % 2) != 0)
                continue;
              double acc = 0.0;
              for (int x = std::max(std::abs(a - b), std::abs(c - d));
                   x <= std::min(a + b, c + d); x += 2)
                acc += (x + 1.0) * (p + 1.0) * wigner_6j(a, b, x, c, d, p) *
                       wigner_6j(a, b, x, c, d, q);
              CHECK(std::abs(acc - (p == q ? 1.0 : 0.0)) < 1e-13);
            }
        }
}

TEST_CASE("6j: triangle violations and classical symmetries") {
  CHECK(wigner_6j(2, 2, 6, 2, 2, 2) == 0.0);

  auto rng = tt::seeded_rng("sixj_symmetries", 32);
  int nonzero = 0;
  for (int rep = 0; rep < 100; ++rep) {
    // Draw specs satisfying the triangle/parity constraints so that most
    // samples probe genuinely nonzero symbols.
    int a = rng.uniform_int(0, 4), b = rng.uniform_int(0, 4);
    int c = std::abs(a - b) + 2 * rng.uniform_int(0, (a + b - std::abs(a - b)) / 2);
    int d = rng.uniform_int(0, 4);
    int e_lo = std::abs(d - c), e_hi = d + c;
    int e = e_lo + 2 * rng.uniform_int(0, (e_hi - e_lo) / 2);
    int f_lo = std::max(std::abs(a - e), std::abs(d - b));
    int f_hi = std::min(a + e, d + b);
    if (f_lo > f_hi || ((a + e + f_lo) % 2) != 0 || ((d + b + f_lo) % 2) != 0)
      continue;
    int f = f_lo + 2 * rng.uniform_int(0, (f_hi - f_lo) / 2);
    double v = wigner_6j(a, b, c, d, e, f);
    if (v != 0.0)
      ++nonzero;
    // Column permutations.
    CHECK(std::abs(v - wigner_6j(b, a, c, e, d, f)) < 1e-13);
    CHECK(std::abs(v - wigner_6j(c, b, a, f, e, d)) < 1e-13);
    CHECK(std::abs(v - wigner_6j(a, c, b, d, f, e)) < 1e-13);
    CHECK(std::abs(v - wigner_6j(b, c, a, e, f, d)) < 1e-13);
    // Upper/lower exchanges of two columns.
    CHECK(std::abs(v - wigner_6j(a, e, f, d, b, c)) < 1e-13);
    CHECK(std::abs(v - wigner_6j(d, b, f, a, e, c)) < 1e-13);
    CHECK(std::abs(v - wigner_6j(d, e, c, a, b, f)) < 1e-13);
  }
  CHECK(nonzero > 20);
}

TEST_CASE("Wigner D element: identity, unitarity, rotation-operator oracle") {
  auto rng = tt::seeded_rng("wigner_D", 33);

  for (int tL : {0, 2, 4, 6})
    for (int tm = -tL; tm <= tL; tm += 2)
      for (int tmp = -tL; tmp <= tL; tmp += 2) {
        Complex v = wigner_D_element(tL, tmp, tm, 0.0, 0.0, 0.0);
        CHECK(std::abs(v - Complex(tmp == tm ? 1.0 : 0.0, 0.0)) < 1e-15);
      }

  for (int tL : {1, 2, 3, 4}) {
    double alpha = rng.uniform(0.0, kTwoPi);
    double beta = rng.uniform(0.0, kPi);
    double gamma = rng.uniform(0.0, kTwoPi);
    int dim = tL + 1;
    ComplexMatrix d(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        d(r, c) = wigner_D_element(tL, tL - 2 * r, tL - 2 * c, alpha, beta,
                                   gamma);
    CHECK(tt::max_abs_diff(d * d.adjoint(),
                           ComplexMatrix::Identity(dim, dim)) < 1e-12);
  }

  // The D factors used by the CG-form kernel equal rotation-operator matrix
  // elements: D^{(L)}_{0,-M}(0, theta, -phi) = <L 0| R(n) |L -M>.
  for (int L : {1, 2, 3}) {
    SpinQuantum jL(2 * L);
    for (int rep = 0; rep < 10; ++rep) {
      UnitAxis n = rng.axis();
      ComplexMatrix rot = rotation_operator(jL, n);
      for (int M = -L; M <= L; ++M) {
        Complex direct = rot(basis_index(jL, SpinProjection(0)),
                             basis_index(jL, SpinProjection(-2 * M)));
        Complex via_d =
            wigner_D_element(2 * L, 0, -2 * M, 0.0, n.theta(), -n.phi());
        CHECK(std::abs(direct - via_d) < 1e-11);
      }
    }
  }
}
