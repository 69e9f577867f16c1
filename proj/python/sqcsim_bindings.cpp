#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <tuple>

#include "sqc/baths.hpp"
#include "sqc/channels.hpp"
#include "sqc/cli.hpp"
#include "sqc/errors.hpp"
#include "sqc/metrics.hpp"
#include "sqc/state.hpp"
#include "sqc/sweep.hpp"

namespace py = pybind11;
using namespace sqc;

namespace {

using Pair = std::tuple<cplx, cplx, cplx, cplx>;

TwoQubitPure to_pure(const Pair& p) {
  return {std::get<0>(p), std::get<1>(p), std::get<2>(p), std::get<3>(p)};
}

ChannelKind to_kind(const std::string& name) { return parse_channel_kind(name); }

KrausSet2 to_kraus(const std::vector<Matrix2>& ops) { return KrausSet2{ops, 0.0}; }

py::dict metrics_dict(const MetricTriple& m) {
  py::dict d;
  d["purity"] = m.purity;
  d["fidelity"] = m.fidelity;
  d["fidelity_corrected"] = m.fidelity_corrected;
  d["concurrence"] = m.concurrence;
  d["concurrence_normalized"] =
      m.concurrence_normalized ? py::object(py::float_(*m.concurrence_normalized)) : py::none();
  d["unphysical"] = m.unphysical;
  return d;
}

}  // namespace

PYBIND11_MODULE(sqcsim, m) {
  m.doc() = "Segmented noisy quantum channel simulator";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<OhmicSpectrum>(m, "OhmicSpectrum")
      .def(py::init<double>(), py::arg("omega_cutoff") = 20.0)
      .def_readwrite("omega_cutoff", &OhmicSpectrum::omega_cutoff);
  py::class_<ThermalBath>(m, "ThermalBath")
      .def(py::init<double>(), py::arg("tau_b") = 1.0)
      .def_readwrite("tau_b", &ThermalBath::tau_b);
  py::class_<SqueezedVacuumBath>(m, "SqueezedVacuumBath")
      .def(py::init<double, double, double, double>(), py::arg("r0") = 3.0,
           py::arg("omega0") = 10.0, py::arg("sigma") = 1.0,
           py::arg("theta") = 0.7853981633974483)
      .def_readwrite("r0", &SqueezedVacuumBath::r0)
      .def_readwrite("omega0", &SqueezedVacuumBath::omega0)
      .def_readwrite("sigma", &SqueezedVacuumBath::sigma)
      .def_readwrite("theta", &SqueezedVacuumBath::theta);
  py::class_<LorentzianSpectrum>(m, "LorentzianSpectrum")
      .def(py::init<double, double, double>(), py::arg("gamma0") = 1.0,
           py::arg("lambda_") = 200.0, py::arg("detuning") = 40.0)
      .def_readwrite("gamma0", &LorentzianSpectrum::gamma0)
      .def_readwrite("lambda_", &LorentzianSpectrum::lambda)
      .def_readwrite("detuning", &LorentzianSpectrum::detuning);
  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("omega_max_factor", &QuadratureConfig::omega_max_factor)
      .def_readwrite("peak_window_sigmas", &QuadratureConfig::peak_window_sigmas)
      .def_readwrite("omega_min", &QuadratureConfig::omega_min)
      .def_readwrite("max_depth", &QuadratureConfig::max_depth);

  m.def("gamma_thermal",
        [](double t, const OhmicSpectrum& s, const ThermalBath& b, const QuadratureConfig& q) {
          return gamma_thermal(t, s, b, q);
        },
        py::arg("t"), py::arg("spec") = OhmicSpectrum{}, py::arg("bath") = ThermalBath{},
        py::arg("quadrature") = QuadratureConfig{});
  m.def("gamma_vacuum",
        [](double t, const OhmicSpectrum& s, const QuadratureConfig& q) {
          return gamma_vacuum(t, s, q);
        },
        py::arg("t"), py::arg("spec") = OhmicSpectrum{}, py::arg("quadrature") = QuadratureConfig{});
  m.def("gamma_squeezed",
        [](double t, const OhmicSpectrum& s, const SqueezedVacuumBath& b, bool verbatim_sign,
           const QuadratureConfig& q) {
          return gamma_squeezed(t, s, b, q,
                                verbatim_sign ? SqueezeSign::kLeadingMinus
                                              : SqueezeSign::kPositive);
        },
        py::arg("t"), py::arg("spec") = OhmicSpectrum{}, py::arg("bath") = SqueezedVacuumBath{},
        py::arg("verbatim_sign") = false, py::arg("quadrature") = QuadratureConfig{});
  m.def("g_lorentzian", &g_lorentzian, py::arg("t"), py::arg("spec") = LorentzianSpectrum{});
  m.def("g_lorentzian_derivative", &g_lorentzian_derivative, py::arg("t"),
        py::arg("spec") = LorentzianSpectrum{});
  m.def("g_ode_oracle", &g_ode_oracle, py::arg("t"), py::arg("spec") = LorentzianSpectrum{},
        py::arg("step") = 1e-4);
  m.def("ad_rates",
        [](double t, const LorentzianSpectrum& s) {
          const ADRates r = ad_rates(t, s);
          return py::make_tuple(r.lamb_shift, r.decay_rate);
        },
        py::arg("t"), py::arg("spec") = LorentzianSpectrum{},
        "Returns (lamb_shift, decay_rate).");
  m.def("markov_classify",
        [](const std::vector<double>& t, const std::vector<double>& rate, double eps) {
          if (t.size() != rate.size()) throw InvalidArgument("t and rate lengths differ");
          std::vector<RateSample> samples;
          for (std::size_t i = 0; i < t.size(); ++i) samples.push_back({t[i], rate[i]});
          const MarkovReport r = markov_classify(samples, eps);
          py::dict d;
          d["classification"] = std::string(to_string(r.classification));
          d["min_rate"] = r.min_rate;
          d["max_rate"] = r.max_rate;
          d["mean_rate"] = r.mean_rate;
          d["first_negative_time"] = r.first_negative_time
                                         ? py::object(py::float_(*r.first_negative_time))
                                         : py::none();
          return d;
        },
        py::arg("t"), py::arg("rate"), py::arg("eps") = 1e-6);

  m.def("dephasing_kraus",
        [](double gamma, double dt) { return dephasing_kraus(gamma, dt).operators; },
        py::arg("gamma"), py::arg("dt") = 1.0);
  m.def("ad_kraus", [](cplx g, double dt) { return ad_kraus(g, dt).operators; }, py::arg("g"),
        py::arg("dt") = 1.0);
  m.def("apply_kraus",
        [](const Matrix2& rho, const std::vector<Matrix2>& ops) {
          return apply_kraus(QubitState(rho), to_kraus(ops)).matrix();
        },
        py::arg("rho"), py::arg("kraus"));
  m.def("compose_segments",
        [](const Matrix2& rho, const std::vector<Matrix2>& ops, long n) {
          return compose_segments(QubitState(rho), to_kraus(ops), n).matrix();
        },
        py::arg("rho"), py::arg("kraus"), py::arg("n"));
  m.def("compose_segments_pair",
        [](const Pair& psi, const std::vector<Matrix2>& ops, long n) {
          return compose_segments(to_pure(psi).projector(), extend_first_qubit(to_kraus(ops)), n)
              .matrix();
        },
        py::arg("psi"), py::arg("kraus"), py::arg("n"),
        "Applies n segments to the first qubit of the pure pair a|00>+b|01>+c|10>+d|11>.");
  m.def("segmented_dephasing_output",
        [](const Matrix2& rho, double gamma_dt, long n) {
          return segmented_dephasing_output(QubitState(rho), gamma_dt, n).matrix();
        },
        py::arg("rho"), py::arg("gamma_dt"), py::arg("n"));
  m.def("segmented_ad_output",
        [](const Matrix2& rho, cplx g_dt, long n) {
          return segmented_ad_output(QubitState(rho), g_dt, n).matrix();
        },
        py::arg("rho"), py::arg("g_dt"), py::arg("n"));
  m.def("two_qubit_output",
        [](const Pair& psi, const std::string& kind, cplx factor, long n) {
          return two_qubit_output(to_pure(psi), to_kind(kind), factor, n).matrix();
        },
        py::arg("psi"), py::arg("kind"), py::arg("segment_factor"), py::arg("n"));

  m.def("purity", [](const Matrix2& rho) { return purity(QubitState(rho)); }, py::arg("rho"));
  m.def("uhlmann_fidelity",
        [](const Matrix2& rho, const Matrix2& sigma) {
          return uhlmann_fidelity(QubitState(rho), QubitState(sigma));
        },
        py::arg("rho"), py::arg("sigma"));
  m.def("concurrence_wootters",
        [](const Matrix4& rho) { return concurrence_wootters(TwoQubitState(rho)); },
        py::arg("rho"));
  m.def("closed_metrics_dephasing",
        [](const Matrix2& rho, const Pair& psi, double e) {
          return metrics_dict(closed_metrics_dephasing(QubitState(rho), to_pure(psi), e));
        },
        py::arg("rho"), py::arg("psi"), py::arg("coherence_factor"));
  m.def("closed_metrics_ad",
        [](const Matrix2& rho, const Pair& psi, cplx g) {
          return metrics_dict(closed_metrics_ad(QubitState(rho), to_pure(psi), g));
        },
        py::arg("rho"), py::arg("psi"), py::arg("channel_factor"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out;
          std::ostringstream err;
          int code = 0;
          {
            py::gil_scoped_release release;
            code = run_cli(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the sqc-sim command line; returns (exit_code, stdout, stderr).");
}
