#include "lagspec/hs_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "lagspec/errors.hpp"

namespace lagspec {

KernelMatrix build_kernel(const AutocorrTable& table, double tau, Eigen::Index n) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double step = tau / static_cast<double>(n);

  const double ratio = step / table.lag_step;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-12 * std::max(1.0, ratio))
    throw std::invalid_argument("table lag_step must divide the kernel grid step exactly");
  const auto stride = static_cast<Eigen::Index>(rounded);

  if ((n - 1) * stride >= table.size())
    throw InsufficientDataError("table covers " + std::to_string(table.size()) +
                                " lags but the kernel needs " + std::to_string((n - 1) * stride + 1));

  // One lag value per diagonal; weight step/tau = 1/n keeps trace == rho(0).
  const double weight = 1.0 / static_cast<double>(n);
  Eigen::VectorXcd diag_value(n);
  for (Eigen::Index d = 0; d < n; ++d) diag_value[d] = weight * table.values[d * stride];

  Eigen::MatrixXcd entries(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    entries(j, j) = diag_value[0];
    for (Eigen::Index k = 0; k < j; ++k) {
      entries(j, k) = diag_value[j - k];
      entries(k, j) = std::conj(diag_value[j - k]);
    }
  }
  return KernelMatrix{n, step, tau, std::move(entries)};
}

namespace {

void require_hermitian(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("matrix must be square");
  const double scale = std::max(1e-300, matrix.cwiseAbs().maxCoeff());
  const double dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("matrix is not Hermitian to 1e-12");
}

}  // namespace

EigenResult eigh(const Eigen::MatrixXcd& matrix) {
  require_hermitian(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigendecomposition failed to converge");

  const Eigen::Index n = matrix.rows();
  EigenResult result;
  result.eigenvalues = solver.eigenvalues().reverse();
  result.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXcd v = solver.eigenvectors().col(n - 1 - i);
    // Canonical phase: largest-magnitude component made real positive.
    Eigen::Index peak;
    v.cwiseAbs().maxCoeff(&peak);
    const double mag = std::abs(v[peak]);
    if (mag > 0.0) v *= std::conj(v[peak]) / mag;
    result.eigenvectors.col(i) = v;
  }
  return result;
}

Eigen::VectorXd eigh_values(const Eigen::MatrixXcd& matrix) {
  require_hermitian(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigendecomposition failed to converge");
  return solver.eigenvalues().reverse();
}

Eigen::VectorXcd apply(const KernelMatrix& matrix, const Eigen::VectorXcd& g) {
  if (g.size() != matrix.n) throw std::invalid_argument("vector length must match kernel dimension");
  return matrix.entries * g;
}

std::vector<double> top_eigenvalues(const AutocorrTable& table, double tau,
                                    Eigen::Index n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("k must be in [1, n]");
  const KernelMatrix kernel = build_kernel(table, tau, n);
  const Eigen::VectorXd values = eigh_values(kernel.entries);
  return {values.data(), values.data() + k};
}

}  // namespace lagspec
