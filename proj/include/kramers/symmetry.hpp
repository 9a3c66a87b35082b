#pragma once

#include <optional>
#include <vector>

#include "kramers/spectral.hpp"
#include "kramers/types.hpp"

namespace kramers {

/// Antilinear map v ↦ A·conj(v), stored by its linear part A.
class AntilinearOperator {
 public:
  explicit AntilinearOperator(Matrix linear);

  const Matrix& linear() const noexcept { return linear_; }
  Index dim() const noexcept { return linear_.rows(); }

  Vector apply(const Vector& v) const;
  /// (this ∘ other) is linear: A·conj(B).
  Matrix compose(const AntilinearOperator& other) const;
  /// A·conj(A).
  Matrix square() const { return compose(*this); }

 private:
  Matrix linear_;
};

/// Hermitian invertible intertwiner with η H η⁻¹ = H†.
class EtaOperator {
 public:
  /// Hermitizes `eta` as (η + η†)/2; throws InvalidInput when the input is
  /// not Hermitian to 1e-10 relative.
  explicit EtaOperator(Matrix eta);
  const Matrix& matrix() const noexcept { return eta_; }

 private:
  Matrix eta_;
};

/// η = Σ_{real,a} |φ⟩⟨φ| + Σ_{pairs,a} (|φ₊⟩⟨φ₋| + |φ₋⟩⟨φ₊|).
EtaOperator construct_eta(const BiorthonormalSystem& system, const SpectrumClassification& classification);

/// ‖η H η⁻¹ − H†‖_F / max(1, ‖H‖_F). Throws SingularEta when η has
/// reciprocal condition below n·ε.
double verify_pseudohermitian(const Matrix& h, const EtaOperator& eta);

/// The Kramers witness with T² = −1 and [H, T] = 0.
///
/// Each real level of even multiplicity d contributes
///   Σ_{a<d/2} ψ_a φ_{a+d/2}ᵀ − ψ_{a+d/2} φ_aᵀ
/// and each conjugate pair contributes Σ_a ψ₋,a φ₊,aᵀ − ψ₊,a φ₋,aᵀ.
/// Throws OddDegeneracy listing every odd real level.
AntilinearOperator construct_T(const BiorthonormalSystem& system,
                               const SpectrumClassification& classification);

Vector apply_antilinear(const AntilinearOperator& t, const Vector& v);

/// ‖H·A − A·conj(H)‖_F / max(1, ‖H‖_F); zero iff H commutes with v ↦ A·conj(v).
double commutator_residual(const Matrix& h, const AntilinearOperator& t);

/// ‖A·conj(A) + I‖_F.
double square_residual(const AntilinearOperator& t);

struct KramersResiduals {
  double commutator;
  double square;
};

struct KramersReport {
  bool pseudohermitian = false;
  std::vector<RealGroup> real_degeneracies;
  bool all_even = false;
  std::optional<AntilinearOperator> witness;
  std::optional<KramersResiduals> residuals;
  /// Residuals within commutator ≤ tol and square ≤ tol·dim.
  bool witness_certified = false;
  double tolerance = kDefaultTolerance;
};

KramersReport kramers_test(const Matrix& h, double tol = kDefaultTolerance);
KramersReport kramers_test(const Matrix& h, const BiorthonormalSystem& system, double tol = kDefaultTolerance);

}  // namespace kramers
