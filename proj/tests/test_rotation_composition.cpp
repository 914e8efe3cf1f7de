#include <doctest.h>

#include "spintomo/rotation_composition.hpp"
#include "test_helpers.hpp"

using namespace spintomo;
namespace tt = spintomo::testing;

namespace {

RotationTriple random_triple(Rng &rng) {
  return RotationTriple{rng.axis(),
                        rng.axis(),
                        rng.axis(),
                        rng.uniform(0.0, kTwoPi),
                        rng.uniform(0.0, kTwoPi),
                        rng.uniform(0.0, kTwoPi)};
}

// Composed SU(2) element, rotation 1 applied first.
ComplexMatrix composed_su2(const RotationTriple &t) {
  return tt::su2_element(t.n3, t.phi3) * tt::su2_element(t.n2, t.phi2) *
         tt::su2_element(t.n1, t.phi1);
}

// Decompose M = cos(Phi/2) I - i (v . sigma) with v = N sin(Phi/2).
Vector3 pauli_vector(const ComplexMatrix &m) {
  return Vector3{-0.5 * (m(0, 1).imag() + m(1, 0).imag()),
                 0.5 * (m(1, 0).real() - m(0, 1).real()),
                 0.5 * (m(1, 1).imag() - m(0, 0).imag())};
}

} // namespace

TEST_CASE("composed half-angle cosine: degenerate cases") {
  auto rng = tt::seeded_rng("compose_cos_trivial", 21);
  RotationTriple zero{rng.axis(), rng.axis(), rng.axis(), 0.0, 0.0, 0.0};
  CHECK(compose_cos_half_angle(zero) == doctest::Approx(1.0).epsilon(1e-15));

  // Coaxial rotations add their angles.
  UnitAxis n = rng.axis();
  RotationTriple coaxial{n, n, n, 0.9, 1.3, 2.1};
  CHECK(std::abs(compose_cos_half_angle(coaxial) -
                 std::cos(0.5 * (0.9 + 1.3 + 2.1))) < 1e-14);
}

TEST_CASE("composed half-angle cosine matches the 2x2 product trace") {
  auto rng = tt::seeded_rng("compose_cos_oracle", 22);
  for (int rep = 0; rep < 200; ++rep) {
    RotationTriple t = random_triple(rng);
    double from_trace = 0.5 * composed_su2(t).trace().real();
    CHECK(std::abs(compose_cos_half_angle(t) - from_trace) < 1e-12);
  }
}

TEST_CASE("composed axis matches the 2x2 Pauli decomposition") {
  auto rng = tt::seeded_rng("compose_axis_oracle", 23);

  RotationTriple zero{rng.axis(), rng.axis(), rng.axis(), 0.0, 0.0, 0.0};
  CHECK(compose_axis_times_sin(zero).norm() < 1e-15);

  // Single active rotation.
  RotationTriple single{rng.axis(), rng.axis(), rng.axis(), 1.7, 0.0, 0.0};
  Vector3 expected = single.n1.cartesian() * std::sin(0.5 * 1.7);
  CHECK((compose_axis_times_sin(single) - expected).norm() < 1e-14);

  for (int rep = 0; rep < 200; ++rep) {
    RotationTriple t = random_triple(rng);
    Vector3 v = compose_axis_times_sin(t);
    CHECK((v - pauli_vector(composed_su2(t))).norm() < 1e-12);
  }
}

TEST_CASE("Pythagoras of the composed rotation") {
  auto rng = tt::seeded_rng("compose_pythagoras", 24);
  for (int rep = 0; rep < 1000; ++rep) {
    RotationTriple t = random_triple(rng);
    double c = compose_cos_half_angle(t);
    double s2 = compose_axis_times_sin(t).squaredNorm();
    CHECK(std::abs(c * c + s2 - 1.0) < 1e-12);
  }
}

TEST_CASE("Chebyshev U: pinned values and recurrence consistency") {
  CHECK(chebyshev_u(0, 0.77) == 1.0);
  CHECK(chebyshev_u(1, 0.3) == doctest::Approx(0.6).epsilon(1e-15));
  for (int tj = 0; tj <= 10; ++tj)
    CHECK(std::abs(chebyshev_u(tj, 1.0) - (tj + 1)) < 1e-12);
}

TEST_CASE("Chebyshev U matches its explicit factorial expansion") {
  auto rng = tt::seeded_rng("chebyshev_expansion", 25);
  for (int n = 0; n <= 10; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      double x = rng.uniform(-1.0, 1.0);
      double expansion = 0.0;
      for (int k = 0; 2 * k <= n; ++k)
        expansion += parity_sign(k) * factorial(n - k) /
                     (factorial(k) * factorial(n - 2 * k)) *
                     pow_int(2.0 * x, n - 2 * k);
      CHECK(std::abs(chebyshev_u(n, x) - expansion) < 1e-12);
    }
  }
}

TEST_CASE("character: closed values and domain") {
  auto rng = tt::seeded_rng("character_values", 26);
  for (int tj : {0, 1, 2, 3, 4}) {
    CHECK(std::abs(character(SpinQuantum(tj), 1.0) - (tj + 1)) < 1e-12);
  }
  for (int rep = 0; rep < 50; ++rep) {
    double phi_half = rng.uniform(0.0, kPi);
    CHECK(std::abs(character(SpinQuantum(1), std::cos(phi_half)) -
                   2.0 * std::cos(phi_half)) < 1e-14);
  }
  CHECK_THROWS_AS(character(SpinQuantum(2), 1.0 + 1e-6), std::domain_error);
}

TEST_CASE("character equals the trace of the composed rotation") {
  auto rng = tt::seeded_rng("character_trace", 27);
  for (int tj : {0, 1, 2, 3, 4}) {
    SpinQuantum j(tj);
    for (int rep = 0; rep < 100; ++rep) {
      RotationTriple t = random_triple(rng);
      Complex trace = (axis_exponential(j, t.n3, t.phi3) *
                       axis_exponential(j, t.n2, t.phi2) *
                       axis_exponential(j, t.n1, t.phi1))
                          .trace();
      double chi = character(j, compose_cos_half_angle(t));
      CHECK(std::abs(trace - Complex(chi, 0.0)) < 1e-11);
    }
  }
}
