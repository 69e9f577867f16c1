#include "sqc/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqc/errors.hpp"

namespace sqc {

QubitState pure_qubit(cplx alpha, cplx beta) {
  Eigen::Vector2cd psi(alpha, beta);
  return QubitState(psi * psi.adjoint());
}

double TwoQubitPure::norm_squared() const {
  return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
}

bool TwoQubitPure::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

double TwoQubitPure::initial_concurrence() const { return 2.0 * std::abs(a * d - b * c); }

TwoQubitState TwoQubitPure::projector() const {
  Eigen::Vector4cd psi(a, b, c, d);
  return TwoQubitState(psi * psi.adjoint());
}

namespace {

template <int D>
CheckResult check_hermitian(const CMatrix<D>& m) {
  const double v = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return {v <= kAlgebraicTol, v};
}

template <int D>
CheckResult check_trace(const CMatrix<D>& m) {
  const double v = std::abs(m.trace() - cplx(1.0));
  return {v <= kAlgebraicTol, v};
}

}  // namespace

Eigen::Vector2d hermitian_eigenvalues(const QubitState& rho) {
  const Matrix2& m = rho.matrix();
  const double p = m(0, 0).real();
  const double q = m(1, 1).real();
  const cplx off = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (p + q);
  const double radius = std::hypot(0.5 * (p - q), std::abs(off));
  return {mean - radius, mean + radius};
}

Eigen::Vector4d hermitian_eigenvalues(const TwoQubitState& rho) {
  const Matrix4 h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigen-decomposition of 4x4 state failed");
  }
  return solver.eigenvalues();
}

ValidationReport validate_state(const QubitState& rho) {
  const Matrix2& m = rho.matrix();
  ValidationReport report;
  report.hermitian = check_hermitian<2>(m);
  report.unit_trace = check_trace<2>(m);
  // det >= 0 together with non-negative diagonals is PSD for a 2x2 Hermitian matrix.
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double worst = std::max({0.0, -det, -m(0, 0).real(), -m(1, 1).real()});
  report.positive = {worst <= kAlgebraicTol, worst};
  return report;
}

ValidationReport validate_state(const TwoQubitState& rho) {
  ValidationReport report;
  report.hermitian = check_hermitian<4>(rho.matrix());
  report.unit_trace = check_trace<4>(rho.matrix());
  const double worst = std::max(0.0, -hermitian_eigenvalues(rho).minCoeff());
  report.positive = {worst <= kSpectralTol, worst};
  return report;
}

template <int D>
double KrausSet<D>::completeness_error() const {
  CMatrix<D> sum = CMatrix<D>::Zero();
  for (const auto& k : operators) sum += k.adjoint() * k;
  return (sum - CMatrix<D>::Identity()).cwiseAbs().maxCoeff();
}

namespace {

template <int D>
void require_complete(const KrausSet<D>& kraus) {
  if (kraus.operators.empty()) throw InvalidArgument("Kraus set is empty");
  const double err = kraus.completeness_error();
  if (!(err <= kSpectralTol)) {
    throw InvalidArgument("Kraus set violates completeness by " + std::to_string(err));
  }
}

template <int D>
CMatrix<D> apply_unchecked(const CMatrix<D>& rho, const KrausSet<D>& kraus) {
  CMatrix<D> out = CMatrix<D>::Zero();
  for (const auto& k : kraus.operators) out.noalias() += k * rho * k.adjoint();
  return out;
}

}  // namespace

template <int D>
DensityMatrix<D> apply_kraus(const DensityMatrix<D>& rho, const KrausSet<D>& kraus) {
  require_complete(kraus);
  return DensityMatrix<D>(apply_unchecked<D>(rho.matrix(), kraus));
}

template <int D>
DensityMatrix<D> compose_segments(const DensityMatrix<D>& rho0, const KrausSet<D>& kraus,
                                  long n) {
  if (n < 1) throw InvalidArgument("segment count must be >= 1, got " + std::to_string(n));
  require_complete(kraus);
  CMatrix<D> rho = rho0.matrix();
  for (long i = 0; i < n; ++i) rho = apply_unchecked<D>(rho, kraus);
  return DensityMatrix<D>(rho);
}

KrausSet4 extend_first_qubit(const KrausSet2& kraus) {
  KrausSet4 lifted;
  lifted.dwell_time = kraus.dwell_time;
  lifted.operators.reserve(kraus.operators.size());
  for (const auto& k : kraus.operators) {
    Matrix4 big = Matrix4::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) big.block<2, 2>(2 * i, 2 * j) = k(i, j) * Matrix2::Identity();
    lifted.operators.push_back(big);
  }
  return lifted;
}

QubitState trace_out_first(const TwoQubitState& rho) {
  Matrix2 out = Matrix2::Zero();
  for (int i = 0; i < 2; ++i) out += rho.matrix().block<2, 2>(2 * i, 2 * i);
  return QubitState(out);
}

QubitState trace_out_second(const TwoQubitState& rho) {
  Matrix2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = rho.matrix().block<2, 2>(2 * i, 2 * j).trace();
  return QubitState(out);
}

template struct KrausSet<2>;
template struct KrausSet<4>;
template QubitState apply_kraus(const QubitState&, const KrausSet2&);
template TwoQubitState apply_kraus(const TwoQubitState&, const KrausSet4&);
template QubitState compose_segments(const QubitState&, const KrausSet2&, long);
template TwoQubitState compose_segments(const TwoQubitState&, const KrausSet4&, long);

}  // namespace sqc
