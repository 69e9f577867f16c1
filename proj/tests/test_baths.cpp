#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "sqc/baths.hpp"
#include "sqc/errors.hpp"

namespace sqc {
namespace {

const OhmicSpectrum kOhmic{20.0};
const ThermalBath kThermal{1.0};
const SqueezedVacuumBath kSqueezed{3.0, 10.0, 1.0, M_PI / 4.0};
const LorentzianSpectrum kFig4{1.0, 200.0, 40.0};

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }
double rel(cplx x, cplx ref) { return std::abs(x - ref) / std::abs(ref); }

TEST(GammaThermal, ZeroAtOrigin) {
  EXPECT_EQ(gamma_thermal(0.0, kOhmic, kThermal), 0.0);
  EXPECT_EQ(gamma_vacuum(0.0, kOhmic), 0.0);
  EXPECT_EQ(gamma_squeezed(0.0, kOhmic, kSqueezed), 0.0);
}

TEST(GammaThermal, MatchesTrapezoidOracle) {
  const double oracle = oracle::gamma_thermal_trapezoid(1.0, 20.0, 1.0);
  QuadratureReport report;
  const double value = gamma_thermal(1.0, kOhmic, kThermal, {}, &report);
  EXPECT_LE(rel(value, oracle), 1e-6) << value << " vs " << oracle;
  EXPECT_GT(report.panels, 0);
}

TEST(GammaThermal, ShortTimeQuadraticScaling) {
  // Omega t = 0.2 is not yet deep in the t^2 regime: the doubling ratio is
  // 3.786 there and reaches 4 only as Omega t -> 0.
  auto ratio = [](double t) {
    return gamma_thermal(2.0 * t, kOhmic, kThermal) / gamma_thermal(t, kOhmic, kThermal);
  };
  const double oracle = oracle::gamma_thermal_trapezoid(0.02, 20.0, 1.0) /
                        oracle::gamma_thermal_trapezoid(0.01, 20.0, 1.0);
  EXPECT_NEAR(ratio(0.01), oracle, 1e-6);
  EXPECT_NEAR(ratio(0.01), 4.0, 0.25);
  EXPECT_NEAR(ratio(0.001), 4.0, 0.01);
}

TEST(GammaThermal, NondecreasingInTime) {
  double prev = 0.0;
  for (int k = 1; k <= 60; ++k) {
    const double g = gamma_thermal(0.05 * k, kOhmic, kThermal);
    EXPECT_GE(g, prev) << "t = " << 0.05 * k;
    prev = g;
  }
}

TEST(GammaThermal, SmallFrequencyStartIsImmaterial) {
  QuadratureConfig shifted;
  shifted.omega_min = 1e-12;
  for (double t : {0.05, 0.5, 2.0}) {
    const double a = gamma_thermal(t, kOhmic, kThermal);
    const double b = gamma_thermal(t, kOhmic, kThermal, shifted);
    EXPECT_LE(rel(a, b), 1e-10) << "t = " << t;
  }
}

TEST(GammaThermal, RejectsBadInput) {
  EXPECT_THROW(gamma_thermal(-1.0, kOhmic, kThermal), InvalidArgument);
  EXPECT_THROW(gamma_thermal(1.0, OhmicSpectrum{0.0}, kThermal), InvalidArgument);
  EXPECT_THROW(gamma_thermal(1.0, kOhmic, ThermalBath{0.0}), InvalidArgument);
  QuadratureConfig q;
  q.omega_max_factor = 5.0;
  EXPECT_THROW(gamma_thermal(1.0, kOhmic, kThermal, q), InvalidArgument);
}

TEST(GammaThermal, ReportsNonConvergence) {
  QuadratureConfig q;
  q.rel_tol = 1e-18;
  try {
    gamma_thermal(1.0, kOhmic, kThermal, q);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_GT(e.achieved_tolerance(), 0.0);
  }
}

TEST(GammaVacuum, ClosedForm) {
  for (double t : {0.01, 0.3, 1.0, 4.0}) {
    EXPECT_LE(rel(gamma_vacuum(t, kOhmic), 0.5 * std::log1p(400.0 * t * t)), 1e-10);
  }
  EXPECT_LE(rel(gamma_vacuum(1.0, kOhmic), oracle::gamma_vacuum_trapezoid(1.0, 20.0)), 1e-6);
}

TEST(GammaSqueezed, ZeroSqueezingIsVacuum) {
  SqueezedVacuumBath flat = kSqueezed;
  flat.r0 = 0.0;
  for (double t : {0.1, 1.0, 3.0}) {
    const double vac = gamma_vacuum(t, kOhmic);
    EXPECT_LE(rel(gamma_squeezed(t, kOhmic, flat), vac), 1e-10);
    EXPECT_EQ(gamma_squeezed(t, kOhmic, flat, {}, SqueezeSign::kLeadingMinus),
              -gamma_squeezed(t, kOhmic, flat));
  }
}

TEST(GammaSqueezed, MatchesSplitOracle) {
  QuadratureReport report;
  const double value = gamma_squeezed(1.0, kOhmic, kSqueezed, {}, SqueezeSign::kPositive, &report);
  const double oracle = oracle::gamma_squeezed_split(1.0, 20.0, 3.0, 10.0, 1.0, M_PI / 4.0);
  EXPECT_LE(rel(value, oracle), 1e-6) << value << " vs " << oracle;
  EXPECT_TRUE(report.peak_resolved);
}

TEST(GammaSqueezed, PeakBeyondCutoff) {
  SqueezedVacuumBath far = kSqueezed;
  far.omega0 = 2000.0;
  const double value = gamma_squeezed(0.5, kOhmic, far);
  const double oracle = oracle::gamma_squeezed_split(0.5, 20.0, 3.0, 2000.0, 1.0, M_PI / 4.0);
  EXPECT_LE(rel(value, oracle), 1e-6);
}

TEST(GammaSqueezed, RejectsBadBath) {
  SqueezedVacuumBath b = kSqueezed;
  b.sigma = 0.0;
  EXPECT_THROW(gamma_squeezed(1.0, kOhmic, b), InvalidArgument);
  b = kSqueezed;
  b.r0 = -1.0;
  EXPECT_THROW(gamma_squeezed(1.0, kOhmic, b), InvalidArgument);
}

TEST(DephasingRate, LinearStubExact) {
  auto linear = [](double t) { return 0.7 * t; };
  for (double h : {1e-6, 1e-3, 0.5}) EXPECT_NEAR(dephasing_rate(1.0, linear, h), 0.7, 1e-10);
}

TEST(DephasingRate, QuadraticStub) {
  EXPECT_NEAR(dephasing_rate(1.0, [](double t) { return t * t; }, 1e-4), 2.0, 1e-6);
}

TEST(DephasingRate, ThermalMatchesRichardson) {
  auto g = [](double t) { return gamma_thermal(t, kOhmic, kThermal); };
  const double oracle = oracle::richardson_derivative(g, 0.5, 1e-3);
  EXPECT_LE(rel(dephasing_rate(0.5, g), oracle), 1e-5);
}

TEST(DephasingRate, StepRules) {
  EXPECT_DOUBLE_EQ(default_rate_step(1.0), 1e-4);
  EXPECT_DOUBLE_EQ(default_rate_step(1e-6), 1e-8);
  EXPECT_THROW(dephasing_rate(0.1, [](double t) { return t; }, 0.2), InvalidArgument);
  EXPECT_THROW(dephasing_rate(0.1, [](double t) { return t; }, 0.0), InvalidArgument);
}

TEST(GLorentzian, InitialValue) {
  EXPECT_EQ(g_lorentzian(0.0, kFig4), cplx(1.0, 0.0));
  EXPECT_EQ(g_ode_oracle(0.0, kFig4, 1e-4), cplx(1.0, 0.0));
  EXPECT_EQ(std::abs(g_lorentzian_derivative(0.0, kFig4)), 0.0);
}

TEST(GLorentzian, ShortTimeMatchesOde) {
  EXPECT_LE(rel(g_lorentzian(0.01, kFig4), g_ode_oracle(0.01, kFig4, 1e-5)), 1e-8);
}

TEST(GLorentzian, OdeAgreementAtFig4Times) {
  for (double t : {0.1, 0.5, 1.0}) {
    EXPECT_LE(rel(g_lorentzian(t, kFig4), g_ode_oracle(t, kFig4, 1e-4)), 1e-6) << "t = " << t;
  }
}

TEST(GLorentzian, BroadSpectrumMarkovLimit) {
  const LorentzianSpectrum broad{1.0, 1e4, 0.0};
  EXPECT_LE(std::abs(g_lorentzian(0.5, broad) - std::exp(-0.25)), 1e-3);
}

TEST(GLorentzian, DegenerateDeltaUsesLimit) {
  // delta = 0 when lambda^2 = 2 gamma0 lambda, i.e. lambda = 2 gamma0 with no detuning.
  const LorentzianSpectrum critical{1.0, 2.0, 0.0};
  for (double t : {0.3, 1.0, 5.0}) {
    const cplx expect = std::exp(-t) * (1.0 + t);
    EXPECT_LE(rel(g_lorentzian(t, critical), expect), 1e-12);
    EXPECT_LE(rel(g_lorentzian(t, critical), g_ode_oracle(t, critical, 1e-3)), 1e-9);
    EXPECT_NEAR(std::abs(g_lorentzian_derivative(t, critical) - (-t * std::exp(-t))), 0.0, 1e-12);
  }
}

TEST(GLorentzian, DerivativeMatchesFiniteDifference) {
  const LorentzianSpectrum narrow{1.0, 0.2, 0.0};
  for (const auto& spec : {kFig4, narrow}) {
    for (double t : {0.05, 0.7, 3.0}) {
      auto g = [&](double s) { return g_lorentzian(s, spec); };
      const cplx oracle = oracle::richardson_derivative_complex(g, t, 1e-4);
      EXPECT_LE(std::abs(g_lorentzian_derivative(t, spec) - oracle), 1e-7 * spec.lambda);
    }
  }
}

TEST(GLorentzian, OdeResidualAtRandomPoints) {
  oracle::StateSampler s(404);
  const double h = 1e-6;
  const cplx a(kFig4.lambda, -kFig4.detuning);
  for (int i = 0; i < 100; ++i) {
    const double t = s.uniform(0.01, 2.0);
    auto g = [&](double x) { return g_lorentzian(x, kFig4); };
    const cplx d1 = (g(t + h) - g(t - h)) / (2.0 * h);
    const cplx d2 = (g(t + 2 * h) - 2.0 * g(t) + g(t - 2 * h)) / (4.0 * h * h);
    const cplx residual = d2 + a * d1 + 0.5 * kFig4.gamma0 * kFig4.lambda * g(t);
    EXPECT_LE(std::abs(residual), 1e-6 * kFig4.gamma0 * kFig4.lambda) << "t = " << t;
  }
}

TEST(GOdeOracle, RefusesCoarseStep) {
  EXPECT_THROW(g_ode_oracle(1.0, kFig4, 1e-3), InvalidArgument);
  EXPECT_THROW(g_ode_oracle(1.0, kFig4, 0.0), InvalidArgument);
}

TEST(ADRates, ZeroAtOrigin) {
  const ADRates r = ad_rates(0.0, kFig4);
  EXPECT_EQ(r.decay_rate, 0.0);
  EXPECT_EQ(r.lamb_shift, 0.0);
}

TEST(ADRates, ConstantStubInverts) {
  const double gamma = 0.8;
  const double shift = 0.3;
  for (double t : {0.1, 1.0, 7.0}) {
    const cplx k(-0.5 * gamma, -0.5 * shift);
    const cplx g = std::exp(k * t);
    const ADRates r = rates_from_amplitude(g, k * g);
    EXPECT_NEAR(r.decay_rate, gamma, 1e-14);
    EXPECT_NEAR(r.lamb_shift, shift, 1e-14);
  }
}

TEST(ADRates, MatchesLogDerivativeOracle) {
  auto lng = [](double s) { return std::log(g_lorentzian(s, kFig4)); };
  const cplx dlog = oracle::richardson_derivative_complex(lng, 0.1, 1e-4);
  const ADRates r = ad_rates(0.1, kFig4);
  EXPECT_NEAR(r.decay_rate, -2.0 * dlog.real(), 1e-6);
  EXPECT_NEAR(r.lamb_shift, -2.0 * dlog.imag(), 1e-6);
}

TEST(ADRates, SingularWhereAmplitudeVanishes) {
  EXPECT_THROW(rates_from_amplitude(cplx(0.0, 0.0), cplx(1.0, 0.0)), NumericalError);
}

TEST(MarkovClassify, ConstantIsTimeIndependent) {
  std::vector<RateSample> s;
  for (int i = 1; i <= 10; ++i) s.push_back({0.1 * i, 0.3});
  const MarkovReport r = markov_classify(s);
  EXPECT_EQ(r.classification, MarkovClass::kTimeIndependent);
  EXPECT_FALSE(r.first_negative_time.has_value());
  EXPECT_EQ(to_string(r.classification), "time-independent Markovian");
}

TEST(MarkovClassify, ThermalIsTimeDependent) {
  std::vector<RateSample> s;
  auto g = [](double t) { return gamma_thermal(t, kOhmic, kThermal); };
  for (int i = 1; i <= 60; ++i) {
    const double t = 0.05 * i;
    s.push_back({t, dephasing_rate(t, g)});
  }
  const MarkovReport r = markov_classify(s);
  EXPECT_EQ(r.classification, MarkovClass::kTimeDependent);
  EXPECT_GT(r.min_rate, 0.0);
}

TEST(MarkovClassify, NarrowLorentzianIsNonMarkovian) {
  const LorentzianSpectrum narrow{1.0, 0.2, 0.0};
  std::vector<RateSample> s;
  for (int i = 1; i <= 200; ++i) {
    const double t = 0.1 * i;
    s.push_back({t, ad_rates(t, narrow).decay_rate});
  }
  const MarkovReport r = markov_classify(s);
  EXPECT_EQ(r.classification, MarkovClass::kNonMarkovian);
  ASSERT_TRUE(r.first_negative_time.has_value());
  EXPECT_GT(*r.first_negative_time, 0.0);
  EXPECT_LT(r.min_rate, 0.0);
}

TEST(MarkovClassify, RejectsBadSamples) {
  EXPECT_THROW(markov_classify({{0.1, 1.0}, {0.2, 1.0}}), InvalidArgument);
  EXPECT_THROW(markov_classify({{0.1, 1.0}, {0.1, 1.0}, {0.3, 1.0}}), InvalidArgument);
  EXPECT_THROW(markov_classify({{0.0, 1.0}, {0.1, 1.0}, {0.3, 1.0}}), InvalidArgument);
  EXPECT_THROW(markov_classify({{0.1, 1.0}, {0.2, NAN}, {0.3, 1.0}}), InvalidArgument);
}

TEST(ZenoScaling, ThermalRateFallsInShortDwellRegime) {
  // R(dt) = Gamma(dt)/dt peaks near dt = 0.1 for this bath; below that the
  // halving sequence is strictly decreasing.
  auto r = [](double dt) { return gamma_thermal(dt, kOhmic, kThermal) / dt; };
  for (double dt : {0.1, 0.05, 0.02, 0.01}) EXPECT_LT(r(0.5 * dt), r(dt)) << "dt = " << dt;
  EXPECT_LT(r(0.005), 0.2 * r(0.1));
}

TEST(Concurrency, ParallelEvaluationIsBitIdentical) {
  std::vector<double> ts;
  for (int i = 1; i <= 16; ++i) ts.push_back(0.1 * i);
  std::vector<double> serial(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) serial[i] = gamma_squeezed(ts[i], kOhmic, kSqueezed);
  std::vector<double> threaded(ts.size());
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < ts.size(); ++i)
    workers.emplace_back([&, i] { threaded[i] = gamma_squeezed(ts[i], kOhmic, kSqueezed); });
  for (auto& w : workers) w.join();
  EXPECT_EQ(serial, threaded);
}

}  // namespace
}  // namespace sqc
