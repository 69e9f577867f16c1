#include "sqc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqc/errors.hpp"
#include "sqc/sweep.hpp"

namespace sqc {

using cplx = std::complex<double>;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> config_to_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": empty key");
    if (value == "true") {
      args.push_back("--" + key);
    } else if (value != "false") {
      args.push_back("--" + key + "=" + value);
    }
  }
  return args;
}

namespace {

struct BathOptions {
  std::string bath = "thermal";
  double omega_tau = 20.0;
  double r0 = 3.0;
  double omega0 = 10.0;
  double sigma = 1.0;
  double theta = std::numbers::pi / 4.0;
  bool verbatim_sign = false;
  double lambda = 200.0;
  double delta = 40.0;
  double rate = 1.0;
  double shift = 0.0;
  double rel_tol = 1e-10;
  double omega_max_factor = 50.0;
  double peak_window = 10.0;

  void attach(CLI::App& app) {
    app.add_option("--bath", bath,
                   "thermal | vacuum | squeezed | constant-dephasing | lorentzian | "
                   "constant-damping");
    app.add_option("--omega-tau", omega_tau, "Ohmic cutoff times tau_B");
    app.add_option("--r0", r0, "squeezing peak weight");
    app.add_option("--omega0", omega0, "squeezing peak frequency [1/tau_B]");
    app.add_option("--sigma", sigma, "squeezing peak width [1/tau_B]");
    app.add_option("--theta", theta, "squeeze phase [rad]");
    app.add_flag("--verbatim-sign", verbatim_sign,
                 "put a leading minus on the squeezed-bath integral");
    app.add_option("--lambda", lambda, "Lorentzian leakage rate [gamma0]");
    app.add_option("--delta", delta, "Lorentzian detuning [gamma0]");
    app.add_option("--rate", rate, "constant rate of the constant-* stubs");
    app.add_option("--shift", shift, "Lamb shift of the constant-damping stub");
    app.add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
    app.add_option("--omega-max-factor", omega_max_factor, "frequency cutoff in units of Omega");
    app.add_option("--peak-window", peak_window, "squeezed-peak window half-width in sigmas");
  }

  BathModel model() const {
    BathModel m;
    m.kind = parse_bath_kind(bath);
    m.ohmic.omega_cutoff = omega_tau;
    m.thermal.tau_b = 1.0;
    m.squeezed = SqueezedVacuumBath{r0, omega0, sigma, theta};
    m.sign = verbatim_sign ? SqueezeSign::kLeadingMinus : SqueezeSign::kPositive;
    m.lorentzian = LorentzianSpectrum{1.0, lambda, delta};
    m.constant_rate = rate;
    m.constant_shift = shift;
    m.quadrature.rel_tol = rel_tol;
    m.quadrature.omega_max_factor = omega_max_factor;
    m.quadrature.peak_window_sigmas = peak_window;
    m.quadrature.validate();
    return m;
  }
};

std::vector<double> parse_numbers(const std::string& text, std::size_t expected,
                                  const char* what) {
  std::vector<double> v = parse_grid(text);
  if (text.find(':') != std::string::npos || v.size() != expected) {
    throw InvalidArgument(std::string(what) + " expects " + std::to_string(expected) +
                          " comma-separated numbers");
  }
  return v;
}

QubitState parse_qubit(const std::string& text) {
  const auto v = parse_numbers(text, 4, "--qubit");
  const cplx alpha(v[0], v[1]);
  const cplx beta(v[2], v[3]);
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (std::abs(norm - 1.0) > 1e-9) throw InvalidArgument("--qubit amplitudes are not normalized");
  return pure_qubit(alpha / norm, beta / norm);
}

TwoQubitPure parse_pair(const std::string& text) {
  const auto v = parse_numbers(text, 8, "--pair");
  TwoQubitPure p{cplx(v[0], v[1]), cplx(v[2], v[3]), cplx(v[4], v[5]), cplx(v[6], v[7])};
  const double norm = std::sqrt(p.norm_squared());
  if (std::abs(norm - 1.0) > 1e-9) throw InvalidArgument("--pair amplitudes are not normalized");
  p.a /= norm;
  p.b /= norm;
  p.c /= norm;
  p.d /= norm;
  return p;
}

struct Invocation {
  BathOptions bath;
  std::string t_grid;
  std::string dt_list;
  std::string total_grid;
  double total_time = 0.0;
  std::string qubit;
  std::string pair;
  bool check_compose = false;
  double eps = 1e-6;
  std::string preset;
  std::string output;
};

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config requires a file path");
      from_file = config_to_args(args[++i]);
    } else if (a.rfind("--config=", 0) == 0) {
      from_file = config_to_args(a.substr(9));
    } else {
      rest.push_back(a);
    }
  }
  if (from_file.empty() || rest.empty()) return rest;
  // Config-derived flags go right after the subcommand so that explicit
  // flags, parsed later, take precedence.
  std::vector<std::string> merged{rest.front()};
  merged.insert(merged.end(), from_file.begin(), from_file.end());
  merged.insert(merged.end(), rest.begin() + 1, rest.end());
  return merged;
}

void emit(const Invocation& inv, std::ostream& out, const std::string& text) {
  if (inv.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(inv.output, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write '" + inv.output + "'");
  file << text;
}

int cmd_gamma(const Invocation& inv, std::ostream& out) {
  const BathModel bath = inv.bath.model();
  if (bath.channel() != ChannelKind::kDephasing) {
    throw InvalidArgument("gamma needs a dephasing bath; use gfun for amplitude damping");
  }
  const std::vector<double> ts = parse_grid(inv.t_grid);
  std::vector<double> gamma(ts.size());
  std::vector<double> rate(ts.size());
  parallel_for(ts.size(), resolve_thread_count(), [&](std::size_t i) {
    gamma[i] = bath.gamma(ts[i]);
    rate[i] = bath.rate(ts[i]);
  });
  std::ostringstream csv;
  csv << "t,Gamma,gamma_rate,unphysical\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    csv << format_number(ts[i]) << ',' << format_number(gamma[i]) << ','
        << format_number(rate[i]) << ',' << (gamma[i] < 0.0 ? 1 : 0) << '\n';
  }
  emit(inv, out, csv.str());
  return kExitOk;
}

int cmd_gfun(const Invocation& inv, std::ostream& out) {
  const BathModel bath = inv.bath.model();
  if (bath.channel() != ChannelKind::kAmplitudeDamping) {
    throw InvalidArgument("gfun needs an amplitude-damping bath; use gamma for dephasing");
  }
  const std::vector<double> ts = parse_grid(inv.t_grid);
  std::ostringstream csv;
  csv << "t,G_real,G_imag,G_abs,lamb_shift,decay_rate\n";
  for (double t : ts) {
    const cplx g = bath.amplitude(t);
    ADRates r;
    if (bath.kind == BathKind::kLorentzian) {
      r = ad_rates(t, bath.lorentzian);
    } else {
      r = rates_from_amplitude(g, -0.5 * cplx(bath.constant_rate, bath.constant_shift) * g);
    }
    csv << format_number(t) << ',' << format_number(g.real()) << ',' << format_number(g.imag())
        << ',' << format_number(std::abs(g)) << ',' << format_number(r.lamb_shift) << ','
        << format_number(r.decay_rate) << '\n';
  }
  emit(inv, out, csv.str());
  return kExitOk;
}

int run_simulation(const Invocation& inv, SweepSpec spec, std::ostream& out, std::ostream& err) {
  spec.check_compose = inv.check_compose;
  const SweepResult result = run_sweep(spec, resolve_thread_count());
  for (const auto& row : result.rows) {
    if (row.unphysical) {
      err << "warning: unphysical channel factor (negative decoherence function) at dt="
          << format_number(row.dt) << "\n";
      break;
    }
  }
  std::ostringstream csv;
  write_sweep_csv(csv, result);
  emit(inv, out, csv.str());
  return kExitOk;
}

int cmd_simulate(const Invocation& inv, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.bath = inv.bath.model();
  spec.dt_list = parse_grid(inv.dt_list);
  spec.t_grid = parse_grid(inv.total_grid);
  if (!inv.qubit.empty()) spec.rho0 = parse_qubit(inv.qubit);
  if (!inv.pair.empty()) spec.psi0 = parse_pair(inv.pair);
  return run_simulation(inv, spec, out, err);
}

int cmd_figure(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return run_simulation(inv, figure_preset(inv.preset), out, err);
}

int cmd_classify(const Invocation& inv, std::ostream& out) {
  const BathModel bath = inv.bath.model();
  const std::vector<double> ts = parse_grid(inv.t_grid);
  std::vector<RateSample> samples(ts.size());
  parallel_for(ts.size(), resolve_thread_count(), [&](std::size_t i) {
    samples[i] = {ts[i], bath.rate(ts[i])};
  });
  const MarkovReport report = markov_classify(samples, inv.eps);
  std::ostringstream text;
  text << "bath: " << to_string(bath.kind) << '\n'
       << "classification: " << to_string(report.classification) << '\n'
       << "samples: " << samples.size() << '\n'
       << "min_rate: " << format_number(report.min_rate) << '\n'
       << "max_rate: " << format_number(report.max_rate) << '\n'
       << "first_negative_time: "
       << (report.first_negative_time ? format_number(*report.first_negative_time) : "none")
       << '\n';
  emit(inv, out, text.str());
  switch (report.classification) {
    case MarkovClass::kTimeIndependent:
      return kExitTimeIndependent;
    case MarkovClass::kTimeDependent:
      return kExitTimeDependent;
    case MarkovClass::kNonMarkovian:
      return kExitNonMarkovian;
  }
  return kExitNumerical;
}

int cmd_zeno(const Invocation& inv, std::ostream& out) {
  const BathModel bath = inv.bath.model();
  const auto rows =
      zeno_table(bath, parse_grid(inv.dt_list), inv.total_time, resolve_thread_count());
  std::ostringstream csv;
  write_zeno_csv(csv, rows);
  emit(inv, out, csv.str());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Segmented noisy quantum channel simulator", "sqc-sim"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  Invocation inv;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", inv.output, "write to file instead of stdout");
  };
  // --config is expanded before parsing; declared here so it shows in help.
  std::string config_path;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value file; explicit flags override it");
  };

  auto* gamma = app.add_subcommand("gamma", "tabulate Gamma(t) and gamma_p(t) of a dephasing bath");
  inv.bath.attach(*gamma);
  gamma->add_option("--t", inv.t_grid, "time grid start:stop:step or list")->required();

  auto* gfun = app.add_subcommand("gfun", "tabulate G(t), S(t), gamma_a(t) of a damping bath");
  inv.bath.attach(*gfun);
  gfun->add_option("--t", inv.t_grid, "time grid start:stop:step or list")->required();

  auto* simulate = app.add_subcommand("simulate", "metric sweep over (dt, T)");
  inv.bath.attach(*simulate);
  simulate->add_option("--dt", inv.dt_list, "segment dwell times (list or range)")->required();
  simulate->add_option("--T", inv.total_grid, "total-time grid (list or range)")->required();
  simulate->add_option("--qubit", inv.qubit, "initial qubit amplitudes re0,im0,re1,im1");
  simulate->add_option("--pair", inv.pair, "initial pair amplitudes a,b,c,d as re,im pairs");
  simulate->add_flag("--check-compose", inv.check_compose,
                     "verify closed forms against Kraus composition");

  auto* classify = app.add_subcommand("classify", "Markovianity class from sampled rates");
  inv.bath.attach(*classify);
  classify->add_option("--t", inv.t_grid, "sample times (> 0)")->required();
  classify->add_option("--eps", inv.eps, "classification tolerance");

  auto* zeno = app.add_subcommand("zeno", "decay rate R(dt) and end-of-channel coherence");
  inv.bath.attach(*zeno);
  zeno->add_option("--dt", inv.dt_list, "strictly decreasing dwell times")->required();
  zeno->add_option("--T", inv.total_time, "total channel time")->required();

  auto* figure = app.add_subcommand("figure", "canonical figure datasets (simulate presets)");
  figure->add_option("preset", inv.preset, "fig2 | fig3 | fig4")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  figure->add_flag("--check-compose", inv.check_compose,
                   "verify closed forms against Kraus composition");

  for (auto* sub : {gamma, gfun, simulate, classify, zeno, figure}) {
    add_output(sub);
    add_config(sub);
  }

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*gamma) return cmd_gamma(inv, out);
    if (*gfun) return cmd_gfun(inv, out);
    if (*simulate) return cmd_simulate(inv, out, err);
    if (*classify) return cmd_classify(inv, out);
    if (*zeno) return cmd_zeno(inv, out);
    if (*figure) return cmd_figure(inv, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace sqc
