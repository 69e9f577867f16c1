#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace sqc {

// Ohmic spectral density J(w) = w exp(-w / omega_cutoff).
struct OhmicSpectrum {
  double omega_cutoff = 20.0;

  double density(double omega) const;
};

// Thermal bath with correlation time tau_b = 1 / (k_B T_B).
struct ThermalBath {
  double tau_b = 1.0;
};

// Squeezed vacuum with a Gaussian squeezing amplitude
//   r(w) = r0 / (sqrt(2 pi) sigma) exp(-(w - omega0)^2 / (2 sigma^2))
// and a mode-independent squeeze phase theta.
struct SqueezedVacuumBath {
  double r0 = 3.0;
  double omega0 = 10.0;
  double sigma = 1.0;
  double theta = 0.7853981633974483;

  double amplitude(double omega) const;
};

// Lorentzian cavity reservoir; gamma0 is the free decay rate, lambda the
// leakage rate and detuning = omega_atom - omega_cavity.
struct LorentzianSpectrum {
  double gamma0 = 1.0;
  double lambda = 200.0;
  double detuning = 40.0;
};

struct QuadratureConfig {
  double rel_tol = 1e-10;
  // Integrals over [0, inf) are truncated at omega_max_factor * omega_cutoff;
  // the neglected Ohmic tail is ~exp(-omega_max_factor).
  double omega_max_factor = 50.0;
  // Half-width, in units of sigma, of the dedicated squeezed-peak window.
  double peak_window_sigmas = 10.0;
  // Lower integration limit; 0 except when probing the small-w behaviour.
  double omega_min = 0.0;
  int max_depth = 15;

  void validate() const;
};

// Diagnostics filled in by the spectral integrals when requested.
struct QuadratureReport {
  double abs_error = 0.0;
  int panels = 0;
  bool peak_resolved = true;
};

// Which overall sign to put in front of the squeezed-vacuum decoherence
// integral. kPositive gives the vacuum limit for r0 = 0; kLeadingMinus
// negates the whole integral (Gamma < 0 in that limit).
enum class SqueezeSign { kPositive, kLeadingMinus };

// Gamma(t) = int dw J(w) coth(w tau_b / 2) (1 - cos wt) / w^2.
double gamma_thermal(double t, const OhmicSpectrum& spec, const ThermalBath& bath,
                     const QuadratureConfig& q = {}, QuadratureReport* report = nullptr);

// Zero-temperature limit of gamma_thermal (coth -> 1).
double gamma_vacuum(double t, const OhmicSpectrum& spec, const QuadratureConfig& q = {},
                    QuadratureReport* report = nullptr);

// Gamma(t) = +/- int dw J(w) (1 - cos wt) / w^2 {cosh 2r(w) - sinh 2r(w) cos(wt - theta)}.
// report->peak_resolved is cleared when the peak window's error estimate
// exceeds rel_tol relative to the total.
double gamma_squeezed(double t, const OhmicSpectrum& spec, const SqueezedVacuumBath& bath,
                      const QuadratureConfig& q = {},
                      SqueezeSign sign = SqueezeSign::kPositive,
                      QuadratureReport* report = nullptr);

using GammaFunction = std::function<double(double)>;

// Default finite-difference step for dephasing_rate: 1e-4 t, floored at
// 1e-8 time units.
double default_rate_step(double t, double time_unit = 1.0);

// gamma_p(t) = dGamma/dt by central difference (Gamma(t+h) - Gamma(t-h)) / 2h.
double dephasing_rate(double t, const GammaFunction& gamma, double h);
double dephasing_rate(double t, const GammaFunction& gamma);

// Closed-form amplitude G(t) for the Lorentzian reservoir and its time
// derivative. Small |delta t| uses cosh/sinh with a series for sinh(x)/x (the
// delta -> 0 limit); otherwise the two decay modes are summed separately so
// that large lambda t neither overflows nor cancels.
std::complex<double> g_lorentzian(double t, const LorentzianSpectrum& spec);
std::complex<double> g_lorentzian_derivative(double t, const LorentzianSpectrum& spec);

// Independent route to G(t): RK4 integration of
//   G'' + (lambda - i Delta) G' + (gamma0 lambda / 2) G = 0,  G(0) = 1, G'(0) = 0,
// which is the memory-kernel equation differentiated once for the
// exponential Lorentzian kernel. Refuses steps with lambda * step > 0.1.
std::complex<double> g_ode_oracle(double t, const LorentzianSpectrum& spec, double step);

struct ADRates {
  double lamb_shift = 0.0;  // S(t)
  double decay_rate = 0.0;  // gamma_a(t), may be negative
};

// S = -2 Im[G'/G], gamma_a = -2 Re[G'/G]. Throws NumericalError when |G| < 1e-14.
ADRates ad_rates(double t, const LorentzianSpectrum& spec);
ADRates rates_from_amplitude(std::complex<double> g, std::complex<double> g_dot);

enum class MarkovClass { kTimeIndependent, kTimeDependent, kNonMarkovian };

std::string_view to_string(MarkovClass c);

struct RateSample {
  double t = 0.0;
  double rate = 0.0;
};

struct MarkovReport {
  MarkovClass classification = MarkovClass::kTimeIndependent;
  double min_rate = 0.0;
  double max_rate = 0.0;
  double mean_rate = 0.0;
  std::optional<double> first_negative_time;
};

// Non-Markovian if some rate < -eps; time-independent if every rate lies
// within eps * |mean| of the mean; time-dependent Markovian otherwise.
MarkovReport markov_classify(const std::vector<RateSample>& samples, double eps = 1e-6);

}  // namespace sqc
