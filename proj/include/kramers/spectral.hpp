#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kramers/types.hpp"

namespace kramers {

struct DiagonalizeOptions {
  /// Relative clustering tolerance: eigenvalues closer than
  /// tol·max(1, spectral radius) are treated as one degenerate level.
  double tol = kDefaultTolerance;
  /// Ceiling on cond₂(V) with unit-norm columns.
  double condition_ceiling = 1e12;
  /// Ceiling on ‖(H − λI)v‖ / max(1, ‖H‖_F) for each returned eigenvector.
  double residual_ceiling = 1e-6;
};

/// A degenerate level E_n with multiplicity d_n whose vectors occupy
/// columns [offset, offset + multiplicity) of the eigenvector matrices.
struct EigenGroup {
  Complex value;
  Index offset = 0;
  Index multiplicity = 0;
};

struct Eigendecomposition {
  Vector eigenvalues;  // one per column of `vectors`; equal inside a group
  Matrix vectors;      // unit-norm right eigenvectors
  std::vector<EigenGroup> groups;
  double condition = 1.0;
};

/// Dense eigendecomposition with degeneracy clustering.
///
/// Eigenvalues come from a complex Schur factorization and are clustered
/// greedily in (Re, Im) order. The eigenvectors of each cluster span the
/// numerical null space of (H − λ̄I), so degenerate levels get an
/// orthonormal basis instead of the nearly parallel vectors a triangular
/// back-substitution produces.
Eigendecomposition diagonalize(const Matrix& h, const DiagonalizeOptions& opts = {});

/// Right eigenvectors ψ and dual vectors φ with ⟨φ_{m,b}|ψ_{n,a}⟩ = δ_{mn}δ_{ab}.
class BiorthonormalSystem {
 public:
  /// Validates shapes and group coverage only; biorthonormality is the
  /// caller's responsibility (see residual helpers below).
  BiorthonormalSystem(std::vector<EigenGroup> groups, Matrix psi, Matrix phi);

  Index dim() const noexcept { return psi_.rows(); }
  const std::vector<EigenGroup>& groups() const noexcept { return groups_; }
  const Matrix& psi() const noexcept { return psi_; }
  const Matrix& phi() const noexcept { return phi_; }

  /// ψ_{n,a}, φ_{n,a} with 0-based a.
  auto psi(std::size_t n, Index a) const { return psi_.col(groups_.at(n).offset + a); }
  auto phi(std::size_t n, Index a) const { return phi_.col(groups_.at(n).offset + a); }

  /// Eigenvalue of every column, expanded from the groups.
  Vector column_eigenvalues() const;

 private:
  std::vector<EigenGroup> groups_;
  Matrix psi_;
  Matrix phi_;
};

/// φ is taken as (V⁻¹)†, so biorthonormality and completeness hold to
/// rounding error.
BiorthonormalSystem biorthonormal_system(const Matrix& h, const DiagonalizeOptions& opts = {});

/// Σ_n Σ_a |ψ_{n,a}⟩ E_n ⟨φ_{n,a}|.
Matrix reconstruct(const BiorthonormalSystem& system);

/// max |⟨φ_{m,b}|ψ_{n,a}⟩ − δ|.
double biorthonormality_residual(const BiorthonormalSystem& system);
/// ‖Σ|ψ⟩⟨φ| − I‖_F.
double completeness_residual(const BiorthonormalSystem& system);
/// max over columns of ‖Hψ − Eψ‖ and ‖H†φ − E*φ‖, relative to max(1, ‖H‖_F).
double eigen_residual(const Matrix& h, const BiorthonormalSystem& system);

struct SpectralValue {
  Complex value;
  Index multiplicity = 1;
};

struct RealGroup {
  double value;
  Index multiplicity;
  std::size_t source;  // index into the classified list
};

struct ConjugatePair {
  Complex upper;  // Im > 0
  Complex lower;  // Im < 0
  Index multiplicity;
  std::size_t upper_source;
  std::size_t lower_source;
};

struct SpectrumClassification {
  std::vector<RealGroup> real_groups;
  std::vector<ConjugatePair> conjugate_pairs;
  double tolerance_used = kDefaultTolerance;

  Index total_multiplicity() const;
};

/// Partitions levels into real groups and conjugate pairs.
///
/// A level is real iff |Im E| ≤ tol·max(1, |E|). Complex levels are paired
/// with their nearest unused conjugate; throws NotPseudohermitianSpectrum
/// when a level has no partner within tol·max(1, |E|) or the partners'
/// multiplicities differ.
SpectrumClassification classify_spectrum(std::span<const SpectralValue> levels,
                                         double tol = kDefaultTolerance);

/// Clusters raw eigenvalues (as in diagonalize) and classifies the result.
SpectrumClassification classify_eigenvalues(std::span<const Complex> eigenvalues,
                                            double tol = kDefaultTolerance);

SpectrumClassification classify_spectrum(const BiorthonormalSystem& system,
                                         double tol = kDefaultTolerance);

/// Greedy clustering used by diagonalize: each value, visited in (Re, Im)
/// order, joins the first cluster whose seed lies within the radius.
std::vector<SpectralValue> cluster_eigenvalues(std::span<const Complex> eigenvalues, double tol);

}  // namespace kramers
