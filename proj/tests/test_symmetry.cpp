#include <doctest.h>

#include <cmath>
#include <vector>

#include "kramers/errors.hpp"
#include "kramers/spectral.hpp"
#include "kramers/spin_rotation.hpp"
#include "kramers/symmetry.hpp"
#include "support/corpus.hpp"

using namespace kramers;
namespace sr = kramers::spin_rotation;
namespace kt = kramers::testing;

namespace {

Matrix diag(std::initializer_list<Complex> values) {
  Vector d(static_cast<Index>(values.size()));
  Index k = 0;
  for (auto v : values) d(k++) = v;
  return d.asDiagonal();
}

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const Complex I{0.0, 1.0};

}  // namespace

TEST_CASE("antilinear operator conventions") {
  const AntilinearOperator conj_only(Matrix::Identity(2, 2));
  Vector v(2);
  v << I, 0.0;
  CHECK((apply_antilinear(conj_only, v) - Vector(Vector::Unit(2, 0) * -I)).norm() == 0.0);

  const AntilinearOperator rot(mat2(0, 1, -1, 0));
  CHECK((apply_antilinear(rot, Vector::Unit(2, 0)) + Vector::Unit(2, 1)).norm() == 0.0);
  CHECK_THROWS_AS(apply_antilinear(rot, Vector::Zero(3)), DimensionMismatch);

  // composition of antilinear maps is linear: (A∘B)v = A·conj(B·conj(v)) = A·conj(B)·v
  kt::Rng rng(5);
  const AntilinearOperator a(kt::gaussian_matrix(rng, 3));
  const AntilinearOperator b(kt::gaussian_matrix(rng, 3));
  Vector w(3);
  for (Index k = 0; k < 3; ++k) w(k) = kt::gaussian_complex(rng);
  CHECK((a.compose(b) * w - a.apply(b.apply(w))).norm() < 1e-12);
}

TEST_CASE("property: apply_antilinear is conjugate-linear") {
  kt::Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 6;
    const AntilinearOperator t(kt::gaussian_matrix(rng, n));
    Vector u(n);
    Vector v(n);
    for (Index k = 0; k < n; ++k) {
      u(k) = kt::gaussian_complex(rng);
      v(k) = kt::gaussian_complex(rng);
    }
    const Complex alpha = kt::gaussian_complex(rng);
    const Complex beta = kt::gaussian_complex(rng);
    const Vector lhs = t.apply(alpha * u + beta * v);
    const Vector rhs = std::conj(alpha) * t.apply(u) + std::conj(beta) * t.apply(v);
    CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
  }
}

TEST_CASE("construct_eta") {
  SUBCASE("Hermitian input gives the identity") {
    kt::Rng rng(1);
    const Matrix a = kt::gaussian_matrix(rng, 4);
    const Matrix h = a + a.adjoint();
    const auto sys = biorthonormal_system(h);
    const auto eta = construct_eta(sys, classify_spectrum(sys));
    CHECK((eta.matrix() - Matrix::Identity(4, 4)).norm() < 1e-12);
  }
  SUBCASE("spin-rotation model gives diag(1/chi, 1) up to positive scale") {
    const sr::ModelParams p{1.0, 0.1, 1.0, 1.0, 0.5};
    const Matrix h = sr::effective_hamiltonian(p);
    const auto sys = biorthonormal_system(h);
    const auto eta = construct_eta(sys, classify_spectrum(sys));
    CHECK(verify_pseudohermitian(h, eta) < 1e-12);
    const Matrix& e = eta.matrix();
    CHECK(std::abs(e(0, 1)) < 1e-12);
    CHECK(std::abs(e(1, 0)) < 1e-12);
    CHECK(e(1, 1).real() > 0.0);
    CHECK((e(0, 0) / e(1, 1)).real() == doctest::Approx(0.375).epsilon(1e-12));
  }
  SUBCASE("conjugate pair diag(i, -i) gives sigma_x") {
    const Matrix h = diag({I, -I});
    const auto sys = biorthonormal_system(h);
    const auto eta = construct_eta(sys, classify_spectrum(sys));
    CHECK((eta.matrix() - mat2(0, 1, 1, 0)).norm() < 1e-14);
    CHECK(verify_pseudohermitian(h, eta) < 1e-12);
  }
}

TEST_CASE("verify_pseudohermitian") {
  kt::Rng rng(2);
  const Matrix a = kt::gaussian_matrix(rng, 3);
  const Matrix herm = a + a.adjoint();
  CHECK(verify_pseudohermitian(herm, EtaOperator(Matrix::Identity(3, 3))) < 1e-12);
  CHECK(verify_pseudohermitian(diag({I, -I}), EtaOperator(mat2(0, 1, 1, 0))) <= 1e-12);

  // Spectra {i, 2i} and {-i, -2i} differ, so no η intertwines; any Hermitian
  // invertible η leaves a residual at least ~ the spectral distance / ‖H‖.
  const Matrix h = diag({I, 2.0 * I});
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix b = kt::gaussian_matrix(rng, 2);
    const Matrix eta = b * b.adjoint() + 0.1 * Matrix::Identity(2, 2);
    CHECK(verify_pseudohermitian(h, EtaOperator(eta)) > 0.1);
  }

  CHECK_THROWS_AS(verify_pseudohermitian(herm, EtaOperator(Matrix::Zero(3, 3))), SingularEta);
  CHECK_THROWS_AS(verify_pseudohermitian(herm, EtaOperator(Matrix::Identity(2, 2))), DimensionMismatch);
  CHECK_THROWS_AS(EtaOperator(mat2(0, 1, 0, 0)), InvalidInput);
}

TEST_CASE("construct_T") {
  SUBCASE("degenerate real level diag(2, 2)") {
    const auto sys = biorthonormal_system(diag({2.0, 2.0}));
    const auto t = construct_T(sys, classify_spectrum(sys));
    CHECK((t.linear() - mat2(0, 1, -1, 0)).norm() < 1e-14);
    CHECK((t.square() + Matrix::Identity(2, 2)).norm() < 1e-14);
  }
  SUBCASE("conjugate pair diag(i, -i)") {
    const Matrix h = diag({I, -I});
    const auto sys = biorthonormal_system(h);
    const auto t = construct_T(sys, classify_spectrum(sys));
    CHECK((t.linear() - mat2(0, -1, 1, 0)).norm() < 1e-14);
    const Matrix expected = mat2(0, -I, -I, 0);
    CHECK((h * t.linear() - expected).norm() < 1e-14);
    CHECK((t.linear() * h.conjugate() - expected).norm() < 1e-14);
  }
  SUBCASE("odd real levels are reported") {
    const auto sys = biorthonormal_system(diag({1.0, 2.0}));
    try {
      construct_T(sys, classify_spectrum(sys));
      FAIL("expected OddDegeneracy");
    } catch (const OddDegeneracy& e) {
      REQUIRE(e.groups().size() == 2);
      CHECK(e.groups()[0].value == doctest::Approx(1.0));
      CHECK(e.groups()[0].multiplicity == 1);
      CHECK(e.groups()[1].value == doctest::Approx(2.0));
    }
  }
}

TEST_CASE("commutator_residual") {
  const AntilinearOperator j(mat2(0, 1, -1, 0));
  CHECK(commutator_residual(diag({2.0, 2.0}), j) == 0.0);
  CHECK(commutator_residual(diag({I, -I}), AntilinearOperator(mat2(0, -1, 1, 0))) <= 1e-12);
  // ‖[[0,2],[-1,0]] − [[0,1],[-2,0]]‖_F = √2, normalized by ‖diag(1,2)‖_F = √5
  CHECK(commutator_residual(diag({1.0, 2.0}), j) == doctest::Approx(std::sqrt(2.0 / 5.0)).epsilon(1e-15));
  CHECK_THROWS_AS(commutator_residual(Matrix::Identity(3, 3), j), DimensionMismatch);
}

TEST_CASE("kramers_test examples") {
  SUBCASE("spin-rotation model in the real-split regime") {
    const auto r = kramers_test(sr::effective_hamiltonian({1.0, 0.1, 1.0, 1.0, 0.5}));
    CHECK(r.pseudohermitian);
    CHECK_FALSE(r.all_even);
    CHECK_FALSE(r.witness.has_value());
    CHECK_FALSE(r.residuals.has_value());
    REQUIRE(r.real_degeneracies.size() == 2);
    CHECK(r.real_degeneracies[0].value == doctest::Approx(1.0 - std::sqrt(0.06)).epsilon(1e-12));
    CHECK(r.real_degeneracies[1].value == doctest::Approx(1.0 + std::sqrt(0.06)).epsilon(1e-12));
    CHECK(r.real_degeneracies[0].multiplicity == 1);
  }
  SUBCASE("diag(2, 2)") {
    const auto r = kramers_test(diag({2.0, 2.0}));
    CHECK(r.pseudohermitian);
    CHECK(r.all_even);
    REQUIRE(r.witness.has_value());
    CHECK(r.residuals->commutator <= 1e-12);
    CHECK(r.residuals->square <= 1e-12);
    CHECK(r.witness_certified);
  }
  SUBCASE("diag(i, 2i)") {
    const auto r = kramers_test(diag({I, 2.0 * I}));
    CHECK_FALSE(r.pseudohermitian);
    CHECK_FALSE(r.witness.has_value());
    CHECK(r.real_degeneracies.empty());
  }
  SUBCASE("defective input propagates") {
    CHECK_THROWS_AS(kramers_test(mat2(0, 1, 0, 0)), NotDiagonalizable);
  }
}

TEST_CASE("property: witnesses exist and are sound for Kramers-degenerate spectra") {
  kt::Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 * (1 + trial % 4);
    const auto cs = kt::kramers_case(rng, n);
    const auto r = kramers_test(cs.h);
    CHECK(r.pseudohermitian);
    CHECK(r.all_even);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness_certified);
    CHECK(square_residual(*r.witness) <= 1e-9 * static_cast<double>(n));
    CHECK(commutator_residual(cs.h, *r.witness) <= 1e-9);
    // T² = −1 on arbitrary vectors
    Vector v(n);
    for (Index k = 0; k < n; ++k) v(k) = kt::gaussian_complex(rng);
    CHECK((r.witness->apply(r.witness->apply(v)) + v).norm() <= 1e-9 * v.norm() * static_cast<double>(n));
  }
}

TEST_CASE("property: odd real degeneracy never yields a witness") {
  kt::Rng rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const auto cs = kt::odd_case(rng, 1 + trial % 8);
    const auto r = kramers_test(cs.h);
    CHECK(r.pseudohermitian);
    CHECK_FALSE(r.all_even);
    CHECK_FALSE(r.witness.has_value());
  }
}

TEST_CASE("property: eta certifies every pseudohermitian-spectrum member and stays Hermitian") {
  kt::Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 * (1 + trial % 4);
    const auto cs = trial % 2 ? kt::kramers_case(rng, n) : kt::odd_case(rng, n);
    const auto sys = biorthonormal_system(cs.h);
    const auto eta = construct_eta(sys, classify_spectrum(sys));
    CHECK(verify_pseudohermitian(cs.h, eta) <= 1e-8);
    CHECK((eta.matrix() - eta.matrix().adjoint()).norm() <= 1e-10 * eta.matrix().norm());
  }
}

TEST_CASE("property: basis covariance of the Kramers test") {
  kt::Rng rng(321);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 2 * (1 + trial % 3);
    const auto cs = trial % 3 == 0 ? kt::kramers_case(rng, n)
                    : trial % 3 == 1 ? kt::odd_case(rng, n)
                                     : kt::generic_case(rng, n);
    const Matrix s = kt::random_similarity(rng, n);
    const Matrix moved = s * cs.h * s.inverse();
    const auto a = kramers_test(cs.h);
    const auto b = kramers_test(moved);
    CHECK(a.pseudohermitian == b.pseudohermitian);
    CHECK(a.all_even == b.all_even);
    CHECK(a.witness.has_value() == b.witness.has_value());
    if (a.witness) {
      // A ↦ S·A·conj(S)⁻¹ is again a witness for S·H·S⁻¹
      const AntilinearOperator mapped(s * a.witness->linear() * s.conjugate().inverse());
      CHECK(commutator_residual(moved, mapped) <= 1e-9);
      CHECK(square_residual(mapped) <= 1e-9 * static_cast<double>(n));
    }
  }
}
