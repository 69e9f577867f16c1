#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace sqc {

using cplx = std::complex<double>;

template <int D>
using CMatrix = Eigen::Matrix<cplx, D, D>;

using Matrix2 = CMatrix<2>;
using Matrix4 = CMatrix<4>;

// Algebraic identities are checked at 1e-12; anything that goes through an
// eigen-decomposition at 1e-10.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kSpectralTol = 1e-10;

// Dense density matrix of a D-level system (D = 2 for a qubit, D = 4 for a
// qubit pair in the basis |00>, |01>, |10>, |11>). Construction does not
// validate; use validate_state() to get a report.
template <int D>
class DensityMatrix {
 public:
  static_assert(D == 2 || D == 4, "only one- and two-qubit states are supported");
  static constexpr int kDim = D;

  DensityMatrix() : m_(CMatrix<D>::Zero()) { m_(0, 0) = 1.0; }
  explicit DensityMatrix(const CMatrix<D>& m) : m_(m) {}

  const CMatrix<D>& matrix() const noexcept { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  cplx trace() const { return m_.trace(); }

 private:
  CMatrix<D> m_;
};

using QubitState = DensityMatrix<2>;
using TwoQubitState = DensityMatrix<4>;

// Pure qubit state alpha|0> + beta|1>, returned as a projector.
QubitState pure_qubit(cplx alpha, cplx beta);

// Two-qubit pure state a|00> + b|01> + c|10> + d|11>.
struct TwoQubitPure {
  cplx a{1.0}, b{0.0}, c{0.0}, d{0.0};

  double norm_squared() const;
  bool is_normalized(double tol = kAlgebraicTol) const;
  // Concurrence of the pure state, 2|ad - bc|.
  double initial_concurrence() const;
  TwoQubitState projector() const;

  static TwoQubitPure bell() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, 0.0, 0.0, s};
  }
};

struct CheckResult {
  bool pass = true;
  // Magnitude by which the invariant is violated (0 when it holds exactly).
  double violation = 0.0;
};

struct ValidationReport {
  CheckResult hermitian;
  CheckResult unit_trace;
  CheckResult positive;

  bool ok() const { return hermitian.pass && unit_trace.pass && positive.pass; }
};

ValidationReport validate_state(const QubitState& rho);
ValidationReport validate_state(const TwoQubitState& rho);

// Eigenvalues of the Hermitian part, ascending.
Eigen::Vector2d hermitian_eigenvalues(const QubitState& rho);
Eigen::Vector4d hermitian_eigenvalues(const TwoQubitState& rho);

// Ordered operator-sum representation of one channel segment. dwell_time is
// carried as metadata in the bath's time unit.
template <int D>
struct KrausSet {
  std::vector<CMatrix<D>> operators;
  double dwell_time = 0.0;

  // max_ij |(sum_j K_j^dagger K_j - I)_ij|
  double completeness_error() const;
};

using KrausSet2 = KrausSet<2>;
using KrausSet4 = KrausSet<4>;

// sum_j K_j rho K_j^dagger. Throws InvalidArgument if the set is empty or
// violates completeness beyond 1e-10.
template <int D>
DensityMatrix<D> apply_kraus(const DensityMatrix<D>& rho, const KrausSet<D>& kraus);

// n successive applications of the same segment map (n >= 1).
template <int D>
DensityMatrix<D> compose_segments(const DensityMatrix<D>& rho0, const KrausSet<D>& kraus,
                                  long n);

// Lifts a single-qubit map to act on the first qubit of a pair: K_j -> K_j (x) I.
KrausSet4 extend_first_qubit(const KrausSet2& kraus);

// Reduced states of a qubit pair.
QubitState trace_out_first(const TwoQubitState& rho);
QubitState trace_out_second(const TwoQubitState& rho);

// Largest element-wise deviation between two matrices of equal dimension.
template <int D>
double max_abs_diff(const DensityMatrix<D>& x, const DensityMatrix<D>& y) {
  return (x.matrix() - y.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace sqc
