#pragma once

#include "kramers/spectral.hpp"
#include "kramers/types.hpp"

namespace kramers {

/// Largest |Im E|·|t| accepted before exp() would overflow.
inline constexpr double kMaxGrowthExponent = 700.0;

/// U(t) = Σ_n Σ_a |ψ_{n,a}⟩ e^{−i E_n t} ⟨φ_{n,a}| (ħ = 1). Not unitary in general.
class EvolutionOperator {
 public:
  EvolutionOperator(double time, Matrix u) : time_(time), u_(std::move(u)) {}
  double time() const noexcept { return time_; }
  const Matrix& matrix() const noexcept { return u_; }

 private:
  double time_;
  Matrix u_;
};

/// Throws EvolutionRangeError when max |Im E_n|·|t| > kMaxGrowthExponent.
EvolutionOperator evolution_operator(const BiorthonormalSystem& system, double t);

/// U·state, without renormalization.
Vector propagate(const EvolutionOperator& u, const Vector& state);

/// |⟨final| U(t) |initial⟩|². Both states must have unit Euclidean norm.
/// Values above 1 are possible for non-unitary evolution and are returned as is.
double transition_probability(const BiorthonormalSystem& system, const Vector& initial,
                              const Vector& final_state, double t);

/// P(t) − P(−t).
double time_asymmetry(const BiorthonormalSystem& system, const Vector& initial,
                      const Vector& final_state, double t);

}  // namespace kramers
