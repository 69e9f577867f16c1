#include "sqc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>

#include "sqc/errors.hpp"

namespace sqc {

using cplx = std::complex<double>;

std::string_view to_string(BathKind kind) {
  switch (kind) {
    case BathKind::kThermal:
      return "thermal";
    case BathKind::kVacuum:
      return "vacuum";
    case BathKind::kSqueezed:
      return "squeezed";
    case BathKind::kConstantDephasing:
      return "constant-dephasing";
    case BathKind::kLorentzian:
      return "lorentzian";
    case BathKind::kConstantDamping:
      return "constant-damping";
  }
  return "unknown";
}

BathKind parse_bath_kind(std::string_view text) {
  for (BathKind k : {BathKind::kThermal, BathKind::kVacuum, BathKind::kSqueezed,
                     BathKind::kConstantDephasing, BathKind::kLorentzian,
                     BathKind::kConstantDamping}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidArgument("unknown bath '" + std::string(text) + "'");
}

ChannelKind BathModel::channel() const {
  return kind == BathKind::kLorentzian || kind == BathKind::kConstantDamping
             ? ChannelKind::kAmplitudeDamping
             : ChannelKind::kDephasing;
}

double BathModel::gamma(double t) const {
  switch (kind) {
    case BathKind::kThermal:
      return gamma_thermal(t, ohmic, thermal, quadrature);
    case BathKind::kVacuum:
      return gamma_vacuum(t, ohmic, quadrature);
    case BathKind::kSqueezed:
      return gamma_squeezed(t, ohmic, squeezed, quadrature, sign);
    case BathKind::kConstantDephasing:
      if (!(t >= 0.0)) throw InvalidArgument("time must be >= 0");
      return constant_rate * t;
    default:
      throw InvalidArgument("bath '" + std::string(to_string(kind)) +
                            "' has no decoherence function (amplitude damping)");
  }
}

cplx BathModel::amplitude(double t) const {
  switch (kind) {
    case BathKind::kLorentzian:
      return g_lorentzian(t, lorentzian);
    case BathKind::kConstantDamping:
      if (!(t >= 0.0)) throw InvalidArgument("time must be >= 0");
      return std::exp(-0.5 * cplx(constant_rate, constant_shift) * t);
    default:
      throw InvalidArgument("bath '" + std::string(to_string(kind)) +
                            "' has no amplitude function (dephasing)");
  }
}

double BathModel::rate(double t) const {
  if (t == 0.0) return kind == BathKind::kConstantDephasing || kind == BathKind::kConstantDamping
                           ? constant_rate
                           : 0.0;
  switch (kind) {
    case BathKind::kConstantDephasing:
    case BathKind::kConstantDamping:
      return constant_rate;
    case BathKind::kLorentzian:
      return ad_rates(t, lorentzian).decay_rate;
    default: {
      const double h = std::min(default_rate_step(t), t);
      return dephasing_rate(t, [this](double s) { return gamma(s); }, h);
    }
  }
}

cplx BathModel::segment_factor(double dt) const {
  if (channel() == ChannelKind::kDephasing) return std::exp(-gamma(dt));
  return amplitude(dt);
}

double BathModel::zeno_rate(double dt) const {
  if (!(dt > 0.0)) throw InvalidArgument("dwell time must be > 0");
  if (channel() == ChannelKind::kDephasing) return gamma(dt) / dt;
  return -2.0 * std::log(std::abs(amplitude(dt))) / dt;
}

int resolve_thread_count() {
  if (const char* env = std::getenv("SQC_SIM_THREADS"); env != nullptr && *env != '\0') {
    int value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value >= 1) return value;
    throw InvalidArgument("SQC_SIM_THREADS must be a positive integer, got '" +
                          std::string(env) + "'");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

void SweepSpec::validate() const {
  if (dt_list.empty()) throw InvalidArgument("dt list is empty");
  if (t_grid.empty()) throw InvalidArgument("T grid is empty");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("T grid must be strictly increasing");
  }
  for (double dt : dt_list) {
    if (!(dt > 0.0)) throw InvalidArgument("dt values must be > 0");
    for (double t : t_grid) segment_count(t, dt);
  }
  if (!validate_state(rho0).ok()) throw InvalidArgument("initial qubit state is not valid");
  if (!psi0.is_normalized()) throw InvalidArgument("initial two-qubit amplitudes not normalized");
}

namespace {

cplx channel_factor(ChannelKind kind, cplx segment_factor, double gamma_dt, long n) {
  if (kind == ChannelKind::kDephasing) return dephasing_factor(gamma_dt, n);
  return stable_power(segment_factor, n);
}

}  // namespace

double compose_deviation(const SweepSpec& spec, cplx segment_factor, long n) {
  const ChannelKind kind = spec.bath.channel();
  KrausSet2 kraus;
  QubitState closed;
  if (kind == ChannelKind::kDephasing) {
    const double gamma_dt = -std::log(segment_factor.real());
    kraus = dephasing_kraus(gamma_dt, 0.0);
    closed = segmented_dephasing_output(spec.rho0, gamma_dt, n);
  } else {
    kraus = ad_kraus(segment_factor, 0.0);
    closed = segmented_ad_output(spec.rho0, segment_factor, n);
  }
  const double single = max_abs_diff(compose_segments(spec.rho0, kraus, n), closed);
  const TwoQubitState pair_closed = two_qubit_output(spec.psi0, kind, segment_factor, n);
  const TwoQubitState pair_composed =
      compose_segments(spec.psi0.projector(), extend_first_qubit(kraus), n);
  return std::max(single, max_abs_diff(pair_composed, pair_closed));
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const ChannelKind kind = spec.bath.channel();

  // Per-dt bath evaluation, reused over the whole T grid.
  std::vector<double> gammas(spec.dt_list.size(), 0.0);
  std::vector<cplx> factors(spec.dt_list.size());
  parallel_for(spec.dt_list.size(), threads, [&](std::size_t i) {
    const double dt = spec.dt_list[i];
    if (kind == ChannelKind::kDephasing) {
      gammas[i] = spec.bath.gamma(dt);
      factors[i] = std::exp(-gammas[i]);
    } else {
      factors[i] = spec.bath.amplitude(dt);
    }
  });

  const std::size_t nt = spec.t_grid.size();
  SweepResult result;
  result.rows.resize(spec.dt_list.size() * nt);
  parallel_for(result.rows.size(), threads, [&](std::size_t idx) {
    const std::size_t i = idx / nt;
    const double dt = spec.dt_list[i];
    const double total = spec.t_grid[idx % nt];
    const long n = segment_count(total, dt);
    const cplx factor = channel_factor(kind, factors[i], gammas[i], n);

    const MetricTriple m = kind == ChannelKind::kDephasing
                               ? closed_metrics_dephasing(spec.rho0, spec.psi0, factor.real())
                               : closed_metrics_ad(spec.rho0, spec.psi0, factor);
    SweepRow& row = result.rows[idx];
    row.dt = dt;
    row.total_time = total;
    row.n = n;
    row.purity = m.purity;
    row.fidelity_verbatim = m.fidelity;
    row.concurrence = m.concurrence;
    row.concurrence_normalized = m.concurrence_normalized;
    row.channel_factor = factor;
    row.unphysical = m.unphysical;
    if (m.unphysical) {
      row.fidelity_uhlmann = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    const QubitState out = kind == ChannelKind::kDephasing
                               ? segmented_dephasing_output(spec.rho0, gammas[i], n)
                               : segmented_ad_output(spec.rho0, factors[i], n);
    row.fidelity_uhlmann = uhlmann_fidelity(spec.rho0, out);

    if (spec.check_compose) {
      const double dev = compose_deviation(spec, factors[i], n);
      if (!(dev <= 1e-10)) {
        throw NumericalError("closed form and Kraus composition disagree by " +
                                 std::to_string(dev) + " at dt=" + format_number(dt) +
                                 ", T=" + format_number(total),
                             dev);
      }
    }
  });
  return result;
}

std::vector<ZenoRow> zeno_table(const BathModel& bath, const std::vector<double>& dt_list,
                                double total_time, int threads) {
  if (dt_list.empty()) throw InvalidArgument("dt list is empty");
  for (std::size_t i = 1; i < dt_list.size(); ++i) {
    if (!(dt_list[i] < dt_list[i - 1])) {
      throw InvalidArgument("zeno dt list must be strictly decreasing");
    }
  }
  std::vector<ZenoRow> rows(dt_list.size());
  for (std::size_t i = 0; i < dt_list.size(); ++i) {
    rows[i].dt = dt_list[i];
    rows[i].n = segment_count(total_time, dt_list[i]);
  }
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    ZenoRow& row = rows[i];
    const auto nd = static_cast<double>(row.n);
    if (bath.channel() == ChannelKind::kDephasing) {
      const double g = bath.gamma(row.dt);
      row.rate = g / row.dt;
      row.coherence_factor = std::exp(-nd * g);
    } else {
      const double log_mag = std::log(std::abs(bath.amplitude(row.dt)));
      row.rate = -2.0 * log_mag / row.dt;
      row.coherence_factor = std::exp(nd * log_mag);
    }
  });
  return rows;
}

SweepSpec figure_preset(std::string_view name) {
  SweepSpec spec;
  if (name == "fig2" || name == "fig3") {
    spec.bath.kind = name == "fig2" ? BathKind::kThermal : BathKind::kSqueezed;
    spec.bath.ohmic.omega_cutoff = 20.0;
    spec.bath.thermal.tau_b = 1.0;
    spec.bath.squeezed = SqueezedVacuumBath{3.0, 10.0, 1.0, std::numbers::pi / 4.0};
    spec.dt_list = {0.1, 0.05, 0.02};
    spec.t_grid = parse_grid("0.1:1.5:0.1");
  } else if (name == "fig4") {
    spec.bath.kind = BathKind::kLorentzian;
    spec.bath.lorentzian = LorentzianSpectrum{1.0, 200.0, 40.0};
    spec.dt_list = {0.5, 0.2, 0.05};
    spec.t_grid = parse_grid("1:10:1");
  } else {
    throw InvalidArgument("unknown figure preset '" + std::string(name) +
                          "' (expected fig2, fig3 or fig4)");
  }
  return spec;
}

namespace {

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw InvalidArgument("malformed number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty grid");
  std::vector<double> values;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
      throw InvalidArgument("range grid must be start:stop:step, got '" + std::string(text) + "'");
    }
    const double start = parse_double(text.substr(0, c1));
    const double stop = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_double(text.substr(c2 + 1));
    if (!(step > 0.0) || stop < start) {
      throw InvalidArgument("range grid needs step > 0 and stop >= start");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= count; ++k) values.push_back(start + static_cast<double>(k) * step);
    return values;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    values.push_back(parse_double(text.substr(pos, end - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return values;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << kSweepHeader << '\n';
  for (const auto& r : result.rows) {
    out << format_number(r.dt) << ',' << format_number(r.total_time) << ',' << r.n << ','
        << format_number(r.purity) << ',' << format_number(r.fidelity_verbatim) << ','
        << format_number(r.fidelity_uhlmann) << ',' << format_number(r.concurrence) << ','
        << (r.concurrence_normalized ? format_number(*r.concurrence_normalized) : "undefined")
        << ',' << format_number(r.channel_factor.real()) << ','
        << format_number(r.channel_factor.imag()) << '\n';
  }
}

void write_zeno_csv(std::ostream& out, const std::vector<ZenoRow>& rows) {
  out << "dt,n,R,coherence_factor\n";
  for (const auto& r : rows) {
    out << format_number(r.dt) << ',' << r.n << ',' << format_number(r.rate) << ','
        << format_number(r.coherence_factor) << '\n';
  }
}

}  // namespace sqc
