#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqc/baths.hpp"
#include "sqc/channels.hpp"
#include "sqc/metrics.hpp"
#include "sqc/state.hpp"

namespace sqc {

enum class BathKind {
  kThermal,            // Ohmic thermal dephasing, times in tau_B
  kVacuum,             // Ohmic zero-temperature dephasing
  kSqueezed,           // Ohmic squeezed-vacuum dephasing
  kConstantDephasing,  // Gamma(t) = rate * t
  kLorentzian,         // amplitude damping, times in 1/gamma0
  kConstantDamping,    // G(t) = exp(-(rate + i shift) t / 2)
};

std::string_view to_string(BathKind kind);
BathKind parse_bath_kind(std::string_view text);

// A bath specification together with everything needed to evaluate it.
struct BathModel {
  BathKind kind = BathKind::kThermal;
  OhmicSpectrum ohmic;
  ThermalBath thermal;
  SqueezedVacuumBath squeezed;
  SqueezeSign sign = SqueezeSign::kPositive;
  LorentzianSpectrum lorentzian;
  double constant_rate = 1.0;
  double constant_shift = 0.0;
  QuadratureConfig quadrature;

  ChannelKind channel() const;
  // Dephasing baths only.
  double gamma(double t) const;
  // Amplitude-damping baths only.
  std::complex<double> amplitude(double t) const;
  // gamma_p(t) for dephasing baths, gamma_a(t) for amplitude damping.
  double rate(double t) const;
  // exp(-Gamma(dt)) or G(dt).
  std::complex<double> segment_factor(double dt) const;
  // Gamma(dt)/dt for dephasing, -2 ln|G(dt)| / dt for amplitude damping.
  double zeno_rate(double dt) const;
};

// Worker count from SQC_SIM_THREADS, else the hardware default (>= 1).
int resolve_thread_count();

// Runs fn(i) for i in [0, count) on up to `threads` workers. Results must be
// written to slots owned by index so that output does not depend on scheduling.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

struct SweepSpec {
  BathModel bath;
  std::vector<double> dt_list;
  std::vector<double> t_grid;
  QubitState rho0 = pure_qubit(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  TwoQubitPure psi0 = TwoQubitPure::bell();
  // Also run the Kraus-composition path and require agreement to 1e-10.
  bool check_compose = false;

  void validate() const;
};

struct SweepRow {
  double dt = 0.0;
  double total_time = 0.0;
  long n = 0;
  double purity = 0.0;
  double fidelity_verbatim = 0.0;
  double fidelity_uhlmann = 0.0;  // NaN when the closed-form output is unphysical
  double concurrence = 0.0;
  std::optional<double> concurrence_normalized;
  std::complex<double> channel_factor;
  bool unphysical = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // dt-major, then T
};

SweepResult run_sweep(const SweepSpec& spec, int threads = 1);

// Largest deviation between the closed-form and the composed Kraus outputs
// (single qubit and lifted two-qubit) for one (dt, n) point.
double compose_deviation(const SweepSpec& spec, std::complex<double> segment_factor, long n);

struct ZenoRow {
  double dt = 0.0;
  long n = 0;
  double rate = 0.0;
  double coherence_factor = 0.0;
};

// dt_list must be strictly decreasing and divide T.
std::vector<ZenoRow> zeno_table(const BathModel& bath, const std::vector<double>& dt_list,
                                double total_time, int threads = 1);

// Canonical figure manifests: "fig2", "fig3", "fig4".
SweepSpec figure_preset(std::string_view name);

// Grid syntax: "start:stop:step" (inclusive, built as start + k*step), a
// comma-separated list, or a single value.
std::vector<double> parse_grid(std::string_view text);

// CSV helpers: 12 significant digits, LF line endings.
std::string format_number(double x);
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_zeno_csv(std::ostream& out, const std::vector<ZenoRow>& rows);

inline constexpr std::string_view kSweepHeader =
    "dt,T,n,purity,fidelity_verbatim,fidelity_uhlmann,concurrence,concurrence_normalized,"
    "channel_factor_real,channel_factor_imag";

}  // namespace sqc
