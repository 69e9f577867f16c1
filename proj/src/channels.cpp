#include "sqc/channels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sqc/errors.hpp"

namespace sqc {

std::string_view to_string(ChannelKind kind) {
  return kind == ChannelKind::kDephasing ? "dephasing" : "amplitude-damping";
}

ChannelKind parse_channel_kind(std::string_view text) {
  if (text == "dephasing") return ChannelKind::kDephasing;
  if (text == "amplitude-damping" || text == "ad") return ChannelKind::kAmplitudeDamping;
  throw InvalidArgument("unknown channel kind '" + std::string(text) + "'");
}

void SegmentedChannelConfig::validate() const {
  if (!(dt > 0.0)) throw InvalidArgument("segment dwell time must be > 0");
  if (n < 1) throw InvalidArgument("segment count must be >= 1");
}

long segment_count(double total_time, double dt) {
  if (!(dt > 0.0) || !(total_time > 0.0)) {
    throw InvalidArgument("total time and dwell time must be > 0");
  }
  const double ratio = total_time / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9) {
    throw InvalidArgument("T=" + std::to_string(total_time) +
                          " is not an integer multiple of dt=" + std::to_string(dt));
  }
  return static_cast<long>(n);
}

namespace {

void require_segments(long n) {
  if (n < 1) throw InvalidArgument("segment count must be >= 1, got " + std::to_string(n));
}

void require_amplitude(cplx g) {
  if (!(std::abs(g) <= 1.0 + 1e-12)) {
    throw InvalidArgument("unphysical amplitude |G| = " + std::to_string(std::abs(g)) + " > 1");
  }
}

Matrix2 pauli_z() {
  Matrix2 z = Matrix2::Zero();
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

}  // namespace

KrausSet2 dephasing_kraus(double gamma, double dt) {
  if (!(gamma >= 0.0)) {
    throw InvalidArgument("invalid decoherence function Gamma = " + std::to_string(gamma) +
                          " < 0 (unphysical segment map)");
  }
  const double e = std::exp(-gamma);
  KrausSet2 k;
  k.dwell_time = dt;
  k.operators.push_back(std::sqrt(0.5 * (1.0 + e)) * Matrix2::Identity());
  k.operators.push_back(std::sqrt(0.5 * (1.0 - e)) * pauli_z());
  return k;
}

KrausSet2 ad_kraus(cplx g, double dt) {
  require_amplitude(g);
  KrausSet2 k;
  k.dwell_time = dt;
  Matrix2 k1 = Matrix2::Zero();
  k1(0, 0) = 1.0;
  k1(1, 1) = std::conj(g);
  Matrix2 k2 = Matrix2::Zero();
  k2(0, 1) = std::sqrt(std::max(0.0, 1.0 - std::norm(g)));
  k.operators = {k1, k2};
  return k;
}

cplx stable_power(cplx g, long n) {
  require_segments(n);
  const double mag = std::abs(g);
  if (mag == 0.0) return 0.0;
  const double nd = static_cast<double>(n);
  const double phase = std::remainder(nd * std::arg(g), 2.0 * std::numbers::pi);
  return std::polar(std::exp(nd * std::log(mag)), phase);
}

double dephasing_factor(double gamma_dt, long n) {
  require_segments(n);
  return std::exp(-static_cast<double>(n) * gamma_dt);
}

QubitState segmented_dephasing_output(const QubitState& rho0, double gamma_dt, long n) {
  if (!(gamma_dt >= 0.0)) {
    throw InvalidArgument("invalid decoherence function Gamma = " + std::to_string(gamma_dt) +
                          " < 0");
  }
  const double e = dephasing_factor(gamma_dt, n);
  Matrix2 out = rho0.matrix();
  out(0, 1) *= e;
  out(1, 0) *= e;
  return QubitState(out);
}

QubitState segmented_ad_output(const QubitState& rho0, cplx g_dt, long n) {
  require_amplitude(g_dt);
  const cplx big_g = stable_power(g_dt, n);
  const Matrix2& in = rho0.matrix();
  Matrix2 out;
  out(1, 1) = in(1, 1) * std::norm(big_g);
  out(0, 0) = in.trace() - out(1, 1);
  out(0, 1) = in(0, 1) * big_g;
  out(1, 0) = in(1, 0) * std::conj(big_g);
  return QubitState(out);
}

TwoQubitState two_qubit_output_from_factor(const TwoQubitPure& psi0, ChannelKind kind,
                                           cplx factor) {
  if (!psi0.is_normalized()) throw InvalidArgument("two-qubit amplitudes are not normalized");
  if (!(std::abs(factor) <= 1.0 + 1e-12)) {
    throw InvalidArgument("channel factor magnitude " + std::to_string(std::abs(factor)) +
                          " exceeds 1");
  }
  const Matrix4 pure = psi0.projector().matrix();
  Matrix4 out = pure;
  if (kind == ChannelKind::kDephasing) {
    // Coherences between |0x> and |1y> of the transmitted qubit scale by E.
    const double e = factor.real();
    out.block<2, 2>(0, 2) *= e;
    out.block<2, 2>(2, 0) *= e;
    return TwoQubitState(out);
  }
  const double keep = std::norm(factor);
  out.block<2, 2>(0, 0) += (1.0 - keep) * pure.block<2, 2>(2, 2);
  out.block<2, 2>(0, 2) *= factor;
  out.block<2, 2>(2, 0) *= std::conj(factor);
  out.block<2, 2>(2, 2) *= keep;
  return TwoQubitState(out);
}

TwoQubitState two_qubit_output(const TwoQubitPure& psi0, ChannelKind kind, cplx segment_factor,
                               long n) {
  require_segments(n);
  if (kind == ChannelKind::kDephasing) {
    if (std::abs(segment_factor.imag()) > 0.0 || !(segment_factor.real() >= 0.0)) {
      throw InvalidArgument("dephasing segment factor must be real and non-negative");
    }
    return two_qubit_output_from_factor(
        psi0, kind, std::pow(segment_factor.real(), static_cast<double>(n)));
  }
  return two_qubit_output_from_factor(psi0, kind, stable_power(segment_factor, n));
}

}  // namespace sqc
