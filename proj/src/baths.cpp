#include "sqc/baths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sqc/errors.hpp"

namespace sqc {

using cplx = std::complex<double>;

double OhmicSpectrum::density(double omega) const {
  return omega * std::exp(-omega / omega_cutoff);
}

double SqueezedVacuumBath::amplitude(double omega) const {
  const double z = (omega - omega0) / sigma;
  return r0 / (std::sqrt(2.0 * std::numbers::pi) * sigma) * std::exp(-0.5 * z * z);
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be > 0");
  if (!(omega_max_factor >= 10.0)) throw InvalidArgument("omega_max_factor must be >= 10");
  if (!(peak_window_sigmas >= 5.0)) throw InvalidArgument("peak_window_sigmas must be >= 5");
  if (!(omega_min >= 0.0)) throw InvalidArgument("omega_min must be >= 0");
  if (max_depth < 1) throw InvalidArgument("max_depth must be >= 1");
}

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("time must be finite and >= 0, got " + std::to_string(t));
  }
}

void require_spectrum(const OhmicSpectrum& spec) {
  if (!(spec.omega_cutoff > 0.0)) throw InvalidArgument("Ohmic cutoff must be > 0");
}

// 1 - cos(x) without cancellation for small x.
double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

// Uniform panels over [lo, hi] no wider than `width`; edges.back() must be lo.
void append_panels(std::vector<double>& edges, double lo, double hi, double width) {
  if (hi <= lo) return;
  const auto count = static_cast<long>(std::ceil((hi - lo) / width));
  for (long i = 1; i <= count; ++i) {
    edges.push_back(i == count ? hi : lo + (hi - lo) * static_cast<double>(i) / count);
  }
}

// Panel width resolving both the Ohmic decay and the (1 - cos wt) oscillation.
double panel_width(double t, double omega_cutoff) {
  double w = 0.5 * omega_cutoff;
  if (t > 0.0) w = std::min(w, 4.0 * std::numbers::pi / t);
  return w;
}

struct PanelSum {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

template <class F>
PanelSum integrate_edges(const F& f, const std::vector<double>& edges, std::size_t first,
                         std::size_t last, const QuadratureConfig& q) {
  PanelSum sum;
  for (std::size_t i = first; i < last; ++i) {
    double err = 0.0;
    double l1 = 0.0;
    sum.value += Rule::integrate(f, edges[i], edges[i + 1],
                                 static_cast<unsigned>(q.max_depth), 0.1 * q.rel_tol, &err, &l1);
    sum.error += err;
    sum.l1 += l1;
  }
  return sum;
}

void require_converged(const PanelSum& s, const QuadratureConfig& q, const char* what) {
  const double scale = std::max(s.l1, std::numeric_limits<double>::min());
  if (!(s.error <= q.rel_tol * scale)) {
    const double achieved = s.error / scale;
    throw NumericalError(std::string(what) + ": quadrature reached relative error " +
                             std::to_string(achieved) + " > rel_tol " +
                             std::to_string(q.rel_tol),
                         achieved);
  }
}

template <class F>
double integrate_background(const F& f, double t, const OhmicSpectrum& spec,
                            const QuadratureConfig& q, QuadratureReport* report,
                            const char* what) {
  std::vector<double> edges{q.omega_min};
  append_panels(edges, q.omega_min, q.omega_max_factor * spec.omega_cutoff,
                panel_width(t, spec.omega_cutoff));
  const PanelSum s = integrate_edges(f, edges, 0, edges.size() - 1, q);
  require_converged(s, q, what);
  if (report != nullptr) {
    report->abs_error = s.error;
    report->panels = static_cast<int>(edges.size()) - 1;
    report->peak_resolved = true;
  }
  return s.value;
}

}  // namespace

double gamma_thermal(double t, const OhmicSpectrum& spec, const ThermalBath& bath,
                     const QuadratureConfig& q, QuadratureReport* report) {
  require_time(t);
  require_spectrum(spec);
  q.validate();
  if (!(bath.tau_b > 0.0)) throw InvalidArgument("tau_b must be > 0");
  if (t == 0.0) {
    if (report != nullptr) *report = {};
    return 0.0;
  }
  const double tau = bath.tau_b;
  // Removable singularity: the integrand tends to t^2 / tau_b as w -> 0.
  const double series_below = 1e-6 / tau;
  auto f = [&](double w) {
    if (w < series_below) return t * t / tau;
    return std::exp(-w / spec.omega_cutoff) / std::tanh(0.5 * w * tau) * one_minus_cos(w * t) / w;
  };
  return integrate_background(f, t, spec, q, report, "gamma_thermal");
}

double gamma_vacuum(double t, const OhmicSpectrum& spec, const QuadratureConfig& q,
                    QuadratureReport* report) {
  require_time(t);
  require_spectrum(spec);
  q.validate();
  if (t == 0.0) {
    if (report != nullptr) *report = {};
    return 0.0;
  }
  auto f = [&](double w) {
    if (w <= 0.0) return 0.0;
    return std::exp(-w / spec.omega_cutoff) * one_minus_cos(w * t) / w;
  };
  return integrate_background(f, t, spec, q, report, "gamma_vacuum");
}

double gamma_squeezed(double t, const OhmicSpectrum& spec, const SqueezedVacuumBath& bath,
                      const QuadratureConfig& q, SqueezeSign sign,
                      QuadratureReport* report) {
  require_time(t);
  require_spectrum(spec);
  q.validate();
  if (!(bath.sigma > 0.0)) throw InvalidArgument("squeezing width sigma must be > 0");
  if (!(bath.r0 >= 0.0)) throw InvalidArgument("squeezing weight r0 must be >= 0");
  if (t == 0.0) {
    if (report != nullptr) *report = {};
    return 0.0;
  }
  const double overall = sign == SqueezeSign::kPositive ? 1.0 : -1.0;
  auto f = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double r2 = 2.0 * bath.amplitude(w);
    const double bracket = std::cosh(r2) - std::sinh(r2) * std::cos(w * t - bath.theta);
    return std::exp(-w / spec.omega_cutoff) * one_minus_cos(w * t) / w * bracket;
  };

  // Background panels on [omega_min, omega_max] with the peak window cut out
  // and integrated on its own sigma-wide panels.
  const double lo = q.omega_min;
  const double hi = q.omega_max_factor * spec.omega_cutoff;
  const double win_hi = std::max(lo, bath.omega0 + q.peak_window_sigmas * bath.sigma);
  const double win_lo = std::clamp(bath.omega0 - q.peak_window_sigmas * bath.sigma, lo, win_hi);
  const double width = panel_width(t, spec.omega_cutoff);

  // A window beyond the cutoff extends the background up to it.
  std::vector<double> edges{lo};
  append_panels(edges, lo, win_lo, width);
  const std::size_t win_first = edges.size() - 1;
  append_panels(edges, win_lo, win_hi, std::min(width, bath.sigma));
  const std::size_t win_last = edges.size() - 1;
  append_panels(edges, win_hi, std::max(win_hi, hi), width);

  const PanelSum before = integrate_edges(f, edges, 0, win_first, q);
  const PanelSum peak = integrate_edges(f, edges, win_first, win_last, q);
  const PanelSum after = integrate_edges(f, edges, win_last, edges.size() - 1, q);
  PanelSum total{before.value + peak.value + after.value, before.error + peak.error + after.error,
                 before.l1 + peak.l1 + after.l1};
  require_converged(total, q, "gamma_squeezed");
  if (report != nullptr) {
    report->abs_error = total.error;
    report->panels = static_cast<int>(edges.size()) - 1;
    report->peak_resolved = peak.error <= q.rel_tol * std::max(std::abs(total.value), total.l1);
  }
  return overall * total.value;
}

double default_rate_step(double t, double time_unit) {
  return std::max(1e-4 * t, 1e-8 * time_unit);
}

double dephasing_rate(double t, const GammaFunction& gamma, double h) {
  if (!(h > 0.0) || !(t >= h)) {
    throw InvalidArgument("dephasing_rate requires t >= h > 0");
  }
  return (gamma(t + h) - gamma(t - h)) / (2.0 * h);
}

double dephasing_rate(double t, const GammaFunction& gamma) {
  return dephasing_rate(t, gamma, default_rate_step(t));
}

namespace {

void require_lorentzian(const LorentzianSpectrum& spec) {
  if (!(spec.gamma0 > 0.0) || !(spec.lambda > 0.0)) {
    throw InvalidArgument("Lorentzian spectrum needs gamma0 > 0 and lambda > 0");
  }
}

struct LorentzianRoots {
  cplx a;      // lambda - i Delta
  cplx delta;  // sqrt(a^2 - 2 gamma0 lambda), principal branch (Re >= 0)
  cplx sum;    // a + delta, free of cancellation since Re a > 0
};

LorentzianRoots lorentzian_roots(const LorentzianSpectrum& spec) {
  const cplx a(spec.lambda, -spec.detuning);
  const cplx delta = std::sqrt(a * a - 2.0 * spec.gamma0 * spec.lambda);
  return {a, delta, a + delta};
}

// sinh(x) / x
cplx sinhc(cplx x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

// Below this |delta t / 2| the cosh/sinh form is used; above it the two
// exponential modes exp(mu_+ t), exp(mu_- t) are evaluated separately, with
// mu_+ = (delta - a)/2 = -gamma0 lambda / (a + delta) and mu_- = -(a + delta)/2.
constexpr double kModeSplit = 0.5;

}  // namespace

cplx g_lorentzian(double t, const LorentzianSpectrum& spec) {
  require_time(t);
  require_lorentzian(spec);
  const auto [a, delta, sum] = lorentzian_roots(spec);
  const cplx x = 0.5 * delta * t;
  if (std::abs(x) < kModeSplit) {
    return std::exp(-0.5 * a * t) * (std::cosh(x) + 0.5 * a * t * sinhc(x));
  }
  const double coupling = spec.gamma0 * spec.lambda;
  const cplx mu_plus = -coupling / sum;
  const cplx mu_minus = -0.5 * sum;
  const cplx c_plus = sum / (2.0 * delta);
  const cplx c_minus = -coupling / (sum * delta);
  return c_plus * std::exp(mu_plus * t) + c_minus * std::exp(mu_minus * t);
}

cplx g_lorentzian_derivative(double t, const LorentzianSpectrum& spec) {
  require_time(t);
  require_lorentzian(spec);
  const auto [a, delta, sum] = lorentzian_roots(spec);
  const double coupling = spec.gamma0 * spec.lambda;
  const cplx x = 0.5 * delta * t;
  if (std::abs(x) < kModeSplit) {
    return -std::exp(-0.5 * a * t) * coupling * 0.5 * t * sinhc(x);
  }
  const cplx mu_plus = -coupling / sum;
  const cplx mu_minus = -0.5 * sum;
  return coupling / (2.0 * delta) * (std::exp(mu_minus * t) - std::exp(mu_plus * t));
}

cplx g_ode_oracle(double t, const LorentzianSpectrum& spec, double step) {
  require_time(t);
  require_lorentzian(spec);
  if (!(step > 0.0)) throw InvalidArgument("ODE step must be > 0");
  if (spec.lambda * step > 0.1) {
    throw InvalidArgument("ODE step too coarse: lambda * step = " +
                          std::to_string(spec.lambda * step) + " > 0.1");
  }
  if (t == 0.0) return 1.0;
  const cplx a(spec.lambda, -spec.detuning);
  const double k = 0.5 * spec.gamma0 * spec.lambda;
  const auto steps = static_cast<long>(std::ceil(t / step));
  const double h = t / static_cast<double>(steps);

  // y = (G, G'), y' = (G', -a G' - k G)
  auto rhs = [&](cplx g, cplx v) { return std::pair<cplx, cplx>{v, -a * v - k * g}; };
  cplx g = 1.0;
  cplx v = 0.0;
  for (long i = 0; i < steps; ++i) {
    const auto [k1g, k1v] = rhs(g, v);
    const auto [k2g, k2v] = rhs(g + 0.5 * h * k1g, v + 0.5 * h * k1v);
    const auto [k3g, k3v] = rhs(g + 0.5 * h * k2g, v + 0.5 * h * k2v);
    const auto [k4g, k4v] = rhs(g + h * k3g, v + h * k3v);
    g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return g;
}

ADRates rates_from_amplitude(cplx g, cplx g_dot) {
  if (!(std::abs(g) > 1e-14)) {
    throw NumericalError("amplitude-damping rates are singular where |G| vanishes");
  }
  const cplx ratio = g_dot / g;
  return {-2.0 * ratio.imag(), -2.0 * ratio.real()};
}

ADRates ad_rates(double t, const LorentzianSpectrum& spec) {
  return rates_from_amplitude(g_lorentzian(t, spec), g_lorentzian_derivative(t, spec));
}

std::string_view to_string(MarkovClass c) {
  switch (c) {
    case MarkovClass::kTimeIndependent:
      return "time-independent Markovian";
    case MarkovClass::kTimeDependent:
      return "time-dependent Markovian";
    case MarkovClass::kNonMarkovian:
      return "non-Markovian";
  }
  return "unknown";
}

MarkovReport markov_classify(const std::vector<RateSample>& samples, double eps) {
  if (samples.size() < 3) throw InvalidArgument("classification needs at least 3 rate samples");
  if (!(eps > 0.0)) throw InvalidArgument("classification tolerance must be > 0");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].t > 0.0)) throw InvalidArgument("rate sample times must be > 0");
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
      throw InvalidArgument("rate sample times must be strictly increasing");
    }
    if (!std::isfinite(samples[i].rate)) throw InvalidArgument("rate samples must be finite");
  }

  MarkovReport report;
  report.min_rate = samples.front().rate;
  report.max_rate = samples.front().rate;
  double sum = 0.0;
  for (const auto& s : samples) {
    report.min_rate = std::min(report.min_rate, s.rate);
    report.max_rate = std::max(report.max_rate, s.rate);
    sum += s.rate;
    if (!report.first_negative_time && s.rate < -eps) report.first_negative_time = s.t;
  }
  report.mean_rate = sum / static_cast<double>(samples.size());

  if (report.first_negative_time) {
    report.classification = MarkovClass::kNonMarkovian;
  } else {
    double spread = 0.0;
    for (const auto& s : samples) spread = std::max(spread, std::abs(s.rate - report.mean_rate));
    report.classification = spread <= eps * std::abs(report.mean_rate)
                                ? MarkovClass::kTimeIndependent
                                : MarkovClass::kTimeDependent;
  }
  return report;
}

}  // namespace sqc
