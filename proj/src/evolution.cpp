#include "kramers/evolution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kramers/errors.hpp"

namespace kramers {

namespace {

void require_unit(const Vector& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-8) throw std::invalid_argument(std::string(what) + ": state must have unit norm");
}

}  // namespace

EvolutionOperator evolution_operator(const BiorthonormalSystem& system, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("evolution_operator: time must be finite");
  const Vector e = system.column_eigenvalues();
  const double growth = e.imag().cwiseAbs().maxCoeff() * std::abs(t);
  if (growth > kMaxGrowthExponent) {
    std::ostringstream os;
    os << "evolution_operator: |Im E|·|t| = " << growth << " exceeds " << kMaxGrowthExponent;
    throw EvolutionRangeError(os.str());
  }
  const Vector phases = (Complex(0.0, -t) * e).array().exp();
  return EvolutionOperator(t, system.psi() * phases.asDiagonal() * system.phi().adjoint());
}

Vector propagate(const EvolutionOperator& u, const Vector& state) {
  require_dim(state, u.matrix().cols(), "propagate");
  return u.matrix() * state;
}

double transition_probability(const BiorthonormalSystem& system, const Vector& initial,
                              const Vector& final_state, double t) {
  require_dim(initial, system.dim(), "transition_probability");
  require_dim(final_state, system.dim(), "transition_probability");
  require_unit(initial, "transition_probability");
  require_unit(final_state, "transition_probability");
  const Vector evolved = propagate(evolution_operator(system, t), initial);
  return std::norm(final_state.dot(evolved));
}

double time_asymmetry(const BiorthonormalSystem& system, const Vector& initial,
                      const Vector& final_state, double t) {
  return transition_probability(system, initial, final_state, t) -
         transition_probability(system, initial, final_state, -t);
}

}  // namespace kramers
