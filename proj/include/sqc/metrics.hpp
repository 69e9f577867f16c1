#pragma once

#include <complex>
#include <optional>

#include "sqc/state.hpp"

namespace sqc {

// Transmission-quality figures for one channel configuration.
struct MetricTriple {
  // |rho_01(T)|, a coherence measure in [0, 1/2].
  double purity = 0.0;
  // Closed-form output-to-input fidelity in squared-overlap form; for dephasing
  // its determinant term carries E where the exact identity has E^2.
  double fidelity = 0.0;
  // Same closed form with the determinant term of the output state computed
  // exactly (differs from `fidelity` only for mixed dephasing inputs).
  double fidelity_corrected = 0.0;
  double concurrence = 0.0;
  // C(T) / C(0); empty when C(0) < 1e-12.
  std::optional<double> concurrence_normalized;
  // Set when the channel factor exceeds 1 in magnitude (negative Gamma).
  bool unphysical = false;
};

// |rho_01|
double purity(const QubitState& rho);

// tr sqrt(sqrt(rho) sigma sqrt(rho)) by 2x2 eigen-decomposition.
// Throws InvalidArgument when either input fails validate_state().
double uhlmann_fidelity(const QubitState& rho, const QubitState& sigma);

// Wootters concurrence max{0, l1 - l2 - l3 - l4}.
double concurrence_wootters(const TwoQubitState& rho);

// Closed forms for the dephasing channel with coherence factor E = exp(-n Gamma(dt)).
MetricTriple closed_metrics_dephasing(const QubitState& rho0, const TwoQubitPure& psi0,
                                      double coherence_factor);

// Closed forms for the amplitude-damping channel with channel factor G(dt)^n.
MetricTriple closed_metrics_ad(const QubitState& rho0, const TwoQubitPure& psi0,
                               std::complex<double> channel_factor);

// Determinant of a 2x2 state, snapped to zero below the rounding floor of
// its elements (64 ulp of tr^2).
double state_determinant(const QubitState& rho);

}  // namespace sqc
