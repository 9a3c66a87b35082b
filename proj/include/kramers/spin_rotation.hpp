#pragma once

// Two-level helicity model of a spin-1/2 particle in a rotating frame with
// helicity-dependent rotation couplings k1, k2 and a magnetic term μB.
// Every closed form here is evaluated in complex arithmetic so the same
// expression covers both the real-spectrum and complex-conjugate regimes.

#include "kramers/spectral.hpp"
#include "kramers/symmetry.hpp"
#include "kramers/types.hpp"

namespace kramers::spin_rotation {

struct ModelParams {
  double energy = 0.0;  // E
  double mu_b = 0.0;    // product μB
  double omega2 = 0.0;  // rotation component ω₂
  double k1 = 0.0;
  double k2 = 0.0;
};

/// k1·ω2/2 − μB, the coupling of the |ψ−⟩ → |ψ+⟩ entry.
double upper_coupling(const ModelParams& p);
/// k2·ω2/2 − μB.
double lower_coupling(const ModelParams& p);

/// [[E, i(k1ω2/2 − μB)], [−i(k2ω2/2 − μB), E]] in the basis (|ψ+⟩, |ψ−⟩).
Matrix effective_hamiltonian(const ModelParams& p);

/// χ = (k1ω2 − 2μB)/(k2ω2 − 2μB). Throws DegenerateModel when the
/// denominator vanishes at working precision.
Complex coupling_ratio(const ModelParams& p);

/// R = √((k1ω2/2 − μB)(k2ω2/2 − μB)), principal branch; eigenvalues are E ± R.
Complex half_splitting(const ModelParams& p);

/// (k1ω2/2 − μB)(k2ω2/2 − μB) > 0: real, non-degenerate spectrum, where no
/// antilinear symmetry squaring to −1 can exist.
bool real_split_regime(const ModelParams& p);

/// ψ1,2 = (±i χ^{1/2}, 1)/√2 and φ1,2 = (±i conj(χ^{−1/2}), 1)/√2 with
/// eigenvalues E ± (k2ω2/2 − μB)·χ^{1/2}.
/// Throws DegenerateModel, or RZero when the two levels coincide.
BiorthonormalSystem model_eigenbasis(const ModelParams& p);

/// diag(1/χ, 1). Throws ComplexSpectrumRegime outside real_split_regime.
EtaOperator model_eta(const ModelParams& p);

/// |⟨ψ+|U(t)|ψ−⟩|² = Re[(χ/2)(1 − cos 2Rt)].
double spin_flip_probability(const ModelParams& p, double t);

/// |⟨φ|U(t)|ψ−⟩|² for |φ⟩ = (|ψ+⟩ − |ψ−⟩)/√2:
/// ½(cos Rt − s·χ^{1/2} sin Rt)² with s = sign(k2ω2/2 − μB).
double phi_transition_probability(const ModelParams& p, double t);

/// P(t) − P(−t) for the |ψ−⟩ → |φ⟩ channel: −s·χ^{1/2} sin 2Rt.
double phi_time_asymmetry(const ModelParams& p, double t);

Vector plus_state();
Vector minus_state();
/// (|ψ+⟩ − |ψ−⟩)/√2.
Vector phi_state();

}  // namespace kramers::spin_rotation
