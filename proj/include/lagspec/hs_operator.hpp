#ifndef LAGSPEC_HS_OPERATOR_HPP
#define LAGSPEC_HS_OPERATOR_HPP

#include <vector>

#include <Eigen/Dense>

#include "lagspec/autocorr.hpp"

namespace lagspec {

/// Nystrom discretization of the lag-kernel operator on [0, tau]: an N x N
/// Hermitian Toeplitz matrix with entries[j][k] = (step/tau) * rho((j-k)*step),
/// step = tau/N (left-endpoint rule). trace == rho(0).
struct KernelMatrix {
  Eigen::Index n = 0;
  double step = 0.0;
  double tau = 0.0;
  Eigen::MatrixXcd entries;
};

/// Full Hermitian eigendecomposition, eigenvalues descending, column i of
/// eigenvectors paired with eigenvalues[i]. Each eigenvector is canonicalized
/// so its largest-magnitude component is real positive.
struct EigenResult {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

KernelMatrix build_kernel(const AutocorrTable& table, double tau, Eigen::Index n);

EigenResult eigh(const Eigen::MatrixXcd& matrix);

/// Eigenvalues-only path (descending); markedly faster, used by sweeps.
Eigen::VectorXd eigh_values(const Eigen::MatrixXcd& matrix);

Eigen::VectorXcd apply(const KernelMatrix& matrix, const Eigen::VectorXcd& g);

/// build_kernel -> eigh -> first k descending eigenvalues.
std::vector<double> top_eigenvalues(const AutocorrTable& table, double tau,
                                    Eigen::Index n, int k);

}  // namespace lagspec

#endif
