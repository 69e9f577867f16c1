#pragma once

#include <complex>
#include <string_view>

#include "sqc/state.hpp"

namespace sqc {

enum class ChannelKind { kDephasing, kAmplitudeDamping };

std::string_view to_string(ChannelKind kind);
// Accepts "dephasing" and "amplitude-damping" (alias "ad").
ChannelKind parse_channel_kind(std::string_view text);

// n identical segments, each traversed in dwell time dt; total time n * dt.
struct SegmentedChannelConfig {
  ChannelKind kind = ChannelKind::kDephasing;
  double dt = 1.0;
  long n = 1;

  double total_time() const { return static_cast<double>(n) * dt; }
  void validate() const;
};

// Number of segments n = T / dt. Throws InvalidArgument unless T / dt is
// within 1e-9 of a positive integer.
long segment_count(double total_time, double dt);

// Kraus pair {sqrt((1 + e^-G)/2) I, sqrt((1 - e^-G)/2) sigma_z} for one
// dephasing segment with decoherence G = Gamma(dt) >= 0.
KrausSet2 dephasing_kraus(double gamma, double dt);

// Kraus pair {diag(1, conj(G)), sqrt(1 - |G|^2) |0><1|} for one
// amplitude-damping segment; requires |G| <= 1 + 1e-12.
KrausSet2 ad_kraus(cplx g, double dt);

// g^n evaluated as exp(n ln|g|) * exp(i (n arg g mod 2 pi)).
cplx stable_power(cplx g, long n);

// Whole-channel coherence factor exp(-n Gamma(dt)); exceeds 1 for negative Gamma.
double dephasing_factor(double gamma_dt, long n);

// Closed-form output of n dephasing segments: off-diagonals scaled by
// exp(-n Gamma(dt)).
QubitState segmented_dephasing_output(const QubitState& rho0, double gamma_dt, long n);

// Closed-form output of n amplitude-damping segments with per-segment amplitude g_dt.
QubitState segmented_ad_output(const QubitState& rho0, cplx g_dt, long n);

// Two-qubit state after the first qubit crosses n segments. segment_factor
// is exp(-Gamma(dt)) for dephasing (real) or G(dt) for amplitude damping.
TwoQubitState two_qubit_output(const TwoQubitPure& psi0, ChannelKind kind, cplx segment_factor,
                               long n);

// Same state built from the whole-channel factor (E(T) or G(dt)^n) directly.
TwoQubitState two_qubit_output_from_factor(const TwoQubitPure& psi0, ChannelKind kind,
                                           cplx channel_factor);

}  // namespace sqc
