#include "kramers/spin_rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kramers/errors.hpp"

namespace kramers::spin_rotation {

namespace {

constexpr Complex kI{0.0, 1.0};

// True when `value` is zero up to cancellation between k·ω2/2 and μB.
bool cancels(double value, double k, const ModelParams& p) {
  const double scale = std::max(std::abs(k * p.omega2 / 2.0), std::abs(p.mu_b));
  return value == 0.0 || std::abs(value) <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

void require_finite(const ModelParams& p) {
  if (!std::isfinite(p.energy) || !std::isfinite(p.mu_b) || !std::isfinite(p.omega2) ||
      !std::isfinite(p.k1) || !std::isfinite(p.k2))
    throw InvalidInput("model parameters must be finite");
}

double lower_sign(const ModelParams& p) { return lower_coupling(p) > 0.0 ? 1.0 : -1.0; }

}  // namespace

double upper_coupling(const ModelParams& p) { return p.k1 * p.omega2 / 2.0 - p.mu_b; }
double lower_coupling(const ModelParams& p) { return p.k2 * p.omega2 / 2.0 - p.mu_b; }

Matrix effective_hamiltonian(const ModelParams& p) {
  require_finite(p);
  Matrix h(2, 2);
  h << p.energy, kI * upper_coupling(p), -kI * lower_coupling(p), p.energy;
  return h;
}

Complex coupling_ratio(const ModelParams& p) {
  require_finite(p);
  const double den = lower_coupling(p);
  if (cancels(den, p.k2, p)) throw DegenerateModel("coupling ratio undefined: k2·ω2 − 2μB vanishes");
  return Complex(upper_coupling(p) / den, 0.0);
}

Complex half_splitting(const ModelParams& p) {
  require_finite(p);
  return std::sqrt(Complex(upper_coupling(p) * lower_coupling(p), 0.0));
}

bool real_split_regime(const ModelParams& p) {
  require_finite(p);
  return upper_coupling(p) * lower_coupling(p) > 0.0;
}

BiorthonormalSystem model_eigenbasis(const ModelParams& p) {
  const Complex chi = coupling_ratio(p);
  if (cancels(upper_coupling(p), p.k1, p)) throw RZero("model eigenbasis undefined: the two levels coincide");
  const Complex root = std::sqrt(chi);
  const Complex dual = std::conj(1.0 / root);
  const double norm = 1.0 / std::sqrt(2.0);

  Matrix psi(2, 2);
  Matrix phi(2, 2);
  psi << kI * root, -kI * root, 1.0, 1.0;
  phi << kI * dual, -kI * dual, 1.0, 1.0;
  psi *= norm;
  phi *= norm;

  const Complex shift = lower_coupling(p) * root;
  std::vector<EigenGroup> groups{{p.energy + shift, 0, 1}, {p.energy - shift, 1, 1}};
  return BiorthonormalSystem(std::move(groups), std::move(psi), std::move(phi));
}

EtaOperator model_eta(const ModelParams& p) {
  if (!real_split_regime(p)) throw ComplexSpectrumRegime("closed-form eta requires a real, non-degenerate spectrum");
  const Complex chi = coupling_ratio(p);
  Matrix eta = Matrix::Zero(2, 2);
  eta(0, 0) = 1.0 / chi;
  eta(1, 1) = 1.0;
  return EtaOperator(std::move(eta));
}

double spin_flip_probability(const ModelParams& p, double t) {
  const Complex chi = coupling_ratio(p);
  const Complex r = half_splitting(p);
  return (chi / 2.0 * (1.0 - std::cos(2.0 * r * t))).real();
}

double phi_transition_probability(const ModelParams& p, double t) {
  const Complex root = std::sqrt(coupling_ratio(p));
  const Complex r = half_splitting(p);
  const Complex amplitude = std::cos(r * t) - lower_sign(p) * root * std::sin(r * t);
  return (0.5 * amplitude * amplitude).real();
}

double phi_time_asymmetry(const ModelParams& p, double t) {
  const Complex root = std::sqrt(coupling_ratio(p));
  const Complex r = half_splitting(p);
  return (-lower_sign(p) * root * std::sin(2.0 * r * t)).real();
}

Vector plus_state() { return Vector::Unit(2, 0); }
Vector minus_state() { return Vector::Unit(2, 1); }

Vector phi_state() {
  Vector v(2);
  v << 1.0, -1.0;
  return v / std::sqrt(2.0);
}

}  // namespace kramers::spin_rotation
