#include "sqc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqc/errors.hpp"

namespace sqc {

double purity(const QubitState& rho) { return std::abs(rho(0, 1)); }

double state_determinant(const QubitState& rho) {
  const Matrix2& m = rho.matrix();
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double tr = m.trace().real();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * tr * tr;
  return std::abs(det) <= floor ? 0.0 : det;
}

namespace {

// Eigen-decomposition of a 2x2 Hermitian PSD matrix. The small eigenvalue
// comes from det / lambda_max so that it keeps full relative accuracy.
struct Eigh2 {
  double low = 0.0;
  double high = 0.0;
  Eigen::Vector2cd low_vec;
  Eigen::Vector2cd high_vec;
};

Eigh2 eigh2(const Matrix2& m, double det) {
  const double p = m(0, 0).real();
  const double q = m(1, 1).real();
  const cplx off = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (p + q);
  const double half_gap = 0.5 * (p - q);
  const double radius = std::hypot(half_gap, std::abs(off));

  Eigh2 e;
  e.high = mean + radius;
  e.low = e.high > 0.0 ? std::max(0.0, det) / e.high : 0.0;
  if (std::abs(off) == 0.0) {
    const bool first_high = p >= q;
    e.high_vec = first_high ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    e.low_vec = first_high ? Eigen::Vector2cd(0.0, 1.0) : Eigen::Vector2cd(1.0, 0.0);
    return e;
  }
  // (m - low I) has the high eigenvector in its column space; use the
  // better-conditioned of the two standard forms.
  Eigen::Vector2cd v;
  if (half_gap >= 0.0) {
    v = Eigen::Vector2cd(half_gap + radius, std::conj(off));
  } else {
    v = Eigen::Vector2cd(off, radius - half_gap);
  }
  e.high_vec = v.normalized();
  e.low_vec = Eigen::Vector2cd(-std::conj(e.high_vec(1)), std::conj(e.high_vec(0)));
  return e;
}

void require_valid(const QubitState& rho, const char* name) {
  const ValidationReport r = validate_state(rho);
  if (!r.ok()) {
    throw InvalidArgument(std::string("fidelity input '") + name +
                          "' is not a valid state (PSD violation " +
                          std::to_string(r.positive.violation) + ")");
  }
}

}  // namespace

double uhlmann_fidelity(const QubitState& rho, const QubitState& sigma) {
  require_valid(rho, "rho");
  require_valid(sigma, "sigma");
  const double det_rho = state_determinant(rho);
  const double det_sigma = state_determinant(sigma);

  const Eigh2 er = eigh2(rho.matrix(), det_rho);
  const Matrix2 sqrt_rho = std::sqrt(er.high) * er.high_vec * er.high_vec.adjoint() +
                           std::sqrt(er.low) * er.low_vec * er.low_vec.adjoint();
  const Matrix2 inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  // det(inner) = det(rho) det(sigma), taken from the factors rather than
  // from the rounded product.
  const Eigh2 ei = eigh2(inner, std::max(0.0, det_rho) * std::max(0.0, det_sigma));
  const double f = std::sqrt(std::max(0.0, ei.high)) + std::sqrt(std::max(0.0, ei.low));
  return std::clamp(f, 0.0, 1.0);
}

double concurrence_wootters(const TwoQubitState& rho) {
  const Matrix4 h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");

  // rho = W W^dagger; the lambda_i (square roots of the eigenvalues of
  // rho (Y rho* Y), Y = sigma_y (x) sigma_y) are the singular values of the
  // symmetric matrix W^T Y W.
  // Eigenvalues at the rounding floor are set to zero: the lambda_i pick up
  // the square root of any residue, so noise of 1e-17 would show as 1e-8.
  Matrix4 w = solver.eigenvectors();
  const double floor =
      64.0 * std::numeric_limits<double>::epsilon() * solver.eigenvalues().cwiseAbs().maxCoeff();
  for (int i = 0; i < 4; ++i) {
    const double ev = solver.eigenvalues()(i);
    if (ev < -kSpectralTol) {
      throw NumericalError("concurrence input is not positive semidefinite (eigenvalue " +
                           std::to_string(ev) + ")");
    }
    w.col(i) *= ev <= floor ? 0.0 : std::sqrt(ev);
  }
  Matrix4 yy = Matrix4::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix4 tau = w.transpose() * yy * w;
  Eigen::JacobiSVD<Matrix4> svd(tau);
  const Eigen::Vector4d l = svd.singularValues();  // decreasing
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

namespace {

std::optional<double> normalized(double value, double initial) {
  if (initial < 1e-12) return std::nullopt;
  return value / initial;
}

}  // namespace

MetricTriple closed_metrics_dephasing(const QubitState& rho0, const TwoQubitPure& psi0,
                                      double e) {
  const Matrix2& m = rho0.matrix();
  const double p00 = m(0, 0).real();
  const double p11 = m(1, 1).real();
  const double coh2 = (m(0, 1) * m(1, 0)).real();
  const double det = state_determinant(rho0);

  MetricTriple out;
  out.unphysical = !(e >= 0.0 && e <= 1.0);
  out.purity = std::abs(m(0, 1)) * e;
  const double overlap = p00 * p00 + p11 * p11 + 2.0 * coh2 * e;
  out.fidelity = overlap + 2.0 * std::sqrt(std::max(0.0, det * (p00 * p11 - coh2 * e)));
  out.fidelity_corrected =
      overlap + 2.0 * std::sqrt(std::max(0.0, det * (p00 * p11 - coh2 * e * e)));
  const double c0 = psi0.initial_concurrence();
  out.concurrence = c0 * e;
  out.concurrence_normalized = normalized(out.concurrence, c0);
  return out;
}

MetricTriple closed_metrics_ad(const QubitState& rho0, const TwoQubitPure& psi0,
                               std::complex<double> g) {
  const Matrix2& m = rho0.matrix();
  const double p00 = m(0, 0).real();
  const double p11 = m(1, 1).real();
  const cplx coh2 = m(0, 1) * m(1, 0);
  const double g2 = std::norm(g);
  const double det = state_determinant(rho0);

  MetricTriple out;
  out.unphysical = !(std::abs(g) <= 1.0 + 1e-12);
  out.purity = std::abs(m(0, 1)) * std::abs(g);
  out.fidelity = p00 + p11 * (p11 - p00) * g2 + 2.0 * (coh2 * g).real() +
                 2.0 * std::sqrt(std::max(
                           0.0, det * (p11 * g2 * (1.0 - p11 * g2) - coh2.real() * g2)));
  out.fidelity_corrected = out.fidelity;
  const double c0 = psi0.initial_concurrence();
  out.concurrence = c0 * std::abs(g);
  out.concurrence_normalized = normalized(out.concurrence, c0);
  return out;
}

}  // namespace sqc
