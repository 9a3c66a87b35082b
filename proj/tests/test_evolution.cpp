#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kramers/errors.hpp"
#include "kramers/evolution.hpp"
#include "kramers/spin_rotation.hpp"
#include "support/corpus.hpp"
#include "support/expm_oracle.hpp"

using namespace kramers;
namespace sr = kramers::spin_rotation;
namespace kt = kramers::testing;

namespace {

const sr::ModelParams kP1{1.0, 0.1, 1.0, 1.0, 0.5};
const Complex I{0.0, 1.0};

// Frozen from a 40-digit mpmath evaluation of expm(−iHt) for the P1 model.
constexpr double kFlipAt1 = 0.15682549057775446700;
constexpr double kPhiFwdAt1 = 0.16481705929922951572;
constexpr double kPhiBwdAt1 = 0.93319887231186702615;
constexpr double kAsymmetryAt1 = -0.76838181301263751043;

Matrix random_hermitian(kt::Rng& rng, Index n) {
  const Matrix a = kt::gaussian_matrix(rng, n);
  return 0.5 * (a + a.adjoint());
}

Vector random_unit(kt::Rng& rng, Index n) {
  Vector v(n);
  for (Index k = 0; k < n; ++k) v(k) = kt::gaussian_complex(rng);
  return v.normalized();
}

}  // namespace

TEST_CASE("U(0) is the identity") {
  kt::Rng rng(1);
  const auto cs = kt::generic_case(rng, 5);
  const auto sys = biorthonormal_system(cs.h);
  CHECK((evolution_operator(sys, 0.0).matrix() - Matrix::Identity(5, 5)).norm() < 1e-12);
  const Vector v = random_unit(rng, 5);
  CHECK((propagate(evolution_operator(sys, 0.0), v) - v).norm() < 1e-12);
}

TEST_CASE("Hermitian input gives unitary evolution for |t| up to 1e3") {
  kt::Rng rng(2);
  const Matrix h = random_hermitian(rng, 6);
  const auto sys = biorthonormal_system(h);
  for (double t : {-1000.0, -3.5, 0.25, 1.0, 77.0, 1000.0}) {
    const auto u = evolution_operator(sys, t);
    CHECK((u.matrix().adjoint() * u.matrix() - Matrix::Identity(6, 6)).norm() <= 1e-10);
    const Vector v = random_unit(rng, 6);
    CHECK(std::abs(propagate(u, v).norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("spin-rotation U(1) matches the dyadic closed form and the series oracle") {
  const Matrix h = sr::effective_hamiltonian(kP1);
  const auto u = evolution_operator(biorthonormal_system(h), 1.0).matrix();

  const double chi = 8.0 / 3.0;
  const double r = std::sqrt(0.06);
  const Complex e1 = std::exp(-I * (1.0 + r));
  const Complex e2 = std::exp(-I * (1.0 - r));
  Matrix closed(2, 2);
  closed << e1 + e2, I * std::sqrt(chi) * (e1 - e2), -I / std::sqrt(chi) * (e1 - e2), e1 + e2;
  closed *= 0.5;
  CHECK((u - closed).norm() <= 1e-10);
  CHECK((u - kt::propagator(h, 1.0)).norm() <= 1e-12);

  // mpmath reference entries
  CHECK(std::abs(u(0, 0) - Complex(0.52417412012083685825, -0.81635282374037793683)) < 1e-12);
  CHECK(std::abs(u(0, 1) - Complex(0.21396618749684289815, -0.33323259322254228864)) < 1e-12);
  CHECK(std::abs(u(1, 0) - Complex(-0.080237320311316086808, 0.12496222245845334164)) < 1e-12);
}

TEST_CASE("propagate from the lower helicity state") {
  const auto sys = biorthonormal_system(sr::effective_hamiltonian(kP1));
  const double chi = 8.0 / 3.0;
  const double r = std::sqrt(0.06);
  for (double t : {-2.0, 0.5, 3.0}) {
    const Complex e1 = std::exp(-I * (1.0 + r) * t);
    const Complex e2 = std::exp(-I * (1.0 - r) * t);
    Vector expected(2);
    expected << 0.5 * I * std::sqrt(chi) * (e1 - e2), 0.5 * (e1 + e2);
    CHECK((propagate(evolution_operator(sys, t), sr::minus_state()) - expected).norm() < 1e-12);
  }
  CHECK_THROWS_AS(propagate(evolution_operator(sys, 1.0), Vector::Zero(3)), DimensionMismatch);
}

TEST_CASE("transition probabilities for the spin-rotation model") {
  const auto sys = biorthonormal_system(sr::effective_hamiltonian(kP1));
  CHECK(transition_probability(sys, sr::minus_state(), sr::plus_state(), 0.0) == doctest::Approx(0.0));
  CHECK(transition_probability(sys, sr::minus_state(), sr::plus_state(), 1.0) ==
        doctest::Approx(kFlipAt1).epsilon(1e-12));
  CHECK(transition_probability(sys, sr::minus_state(), sr::phi_state(), 1.0) ==
        doctest::Approx(kPhiFwdAt1).epsilon(1e-12));
  CHECK(transition_probability(sys, sr::minus_state(), sr::phi_state(), -1.0) ==
        doctest::Approx(kPhiBwdAt1).epsilon(1e-12));
  CHECK(time_asymmetry(sys, sr::minus_state(), sr::phi_state(), 1.0) ==
        doctest::Approx(kAsymmetryAt1).epsilon(1e-12));
  CHECK(std::abs(kFlipAt1 - 0.156826) < 1e-6);

  // At t = π/(2R) the flip "probability" reaches χ = 8/3 and is reported raw.
  const double peak_t = M_PI / (2.0 * std::sqrt(0.06));
  CHECK(transition_probability(sys, sr::minus_state(), sr::plus_state(), peak_t) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("orthogonal helicity flip is even in time") {
  const auto sys = biorthonormal_system(sr::effective_hamiltonian(kP1));
  for (double t = 0.0; t < 20.0; t += 0.7)
    CHECK(std::abs(time_asymmetry(sys, sr::minus_state(), sr::plus_state(), t)) < 1e-12);
}

TEST_CASE("Hermitian limit still shows a nonzero asymmetry on the phi channel") {
  const sr::ModelParams p{1.0, 0.0, 1.0, 1.0, 1.0};
  const auto sys = biorthonormal_system(sr::effective_hamiltonian(p));
  // R = 1/2; asymmetry = −sin(2Rt), checked against mpmath at t = 1
  CHECK(time_asymmetry(sys, sr::minus_state(), sr::phi_state(), 1.0) ==
        doctest::Approx(-0.84147098480789650665).epsilon(1e-12));
  for (double t = 0.1; t < 10.0; t += 0.37)
    CHECK(time_asymmetry(sys, sr::minus_state(), sr::phi_state(), t) == doctest::Approx(-std::sin(t)).epsilon(1e-9));
}

TEST_CASE("range guard") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = I;
  h(1, 1) = -I;
  const auto sys = biorthonormal_system(h);
  CHECK_NOTHROW(evolution_operator(sys, 699.0));
  CHECK_THROWS_AS(evolution_operator(sys, 701.0), EvolutionRangeError);
  CHECK_THROWS_AS(evolution_operator(sys, -701.0), EvolutionRangeError);
  CHECK_THROWS_AS(evolution_operator(sys, NAN), std::invalid_argument);
  CHECK_THROWS_AS(transition_probability(sys, Vector::Unit(2, 0), Vector::Unit(2, 1), 800.0), EvolutionRangeError);
}

TEST_CASE("transition_probability preconditions") {
  const auto sys = biorthonormal_system(sr::effective_hamiltonian(kP1));
  CHECK_THROWS_AS(transition_probability(sys, 2.0 * sr::minus_state(), sr::plus_state(), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(transition_probability(sys, Vector::Unit(3, 0), sr::plus_state(), 1.0), DimensionMismatch);
}

TEST_CASE("property: evolution matches the series oracle and is a semigroup") {
  kt::Rng rng(77);
  std::uniform_real_distribution<double> times(-2.0, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 2 + trial % 5;
    const auto cs = trial % 2 ? kt::generic_case(rng, n) : kt::odd_case(rng, n);
    const auto sys = biorthonormal_system(cs.h);
    const double t = times(rng);
    const double s = times(rng);
    const Matrix ut = evolution_operator(sys, t).matrix();
    const Matrix us = evolution_operator(sys, s).matrix();
    const Matrix uts = evolution_operator(sys, t + s).matrix();
    CHECK((uts - ut * us).norm() <= 1e-9 * (1.0 + ut.norm() * us.norm()));
    const Matrix oracle = kt::propagator(cs.h, t);
    CHECK((ut - oracle).norm() <= 1e-9 * (1.0 + oracle.norm()));
  }
}

TEST_CASE("property: Hermitian probabilities lie in [0, 1] and sum to one over a basis") {
  kt::Rng rng(78);
  std::uniform_real_distribution<double> times(-50.0, 50.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + trial % 4;
    const auto sys = biorthonormal_system(random_hermitian(rng, n));
    const Vector init = random_unit(rng, n);
    const double t = times(rng);
    double total = 0.0;
    for (Index k = 0; k < n; ++k) {
      const double p = transition_probability(sys, init, Vector::Unit(n, k), t);
      CHECK(p >= -1e-12);
      CHECK(p <= 1.0 + 1e-12);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}
