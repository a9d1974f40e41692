#ifndef LAGSPEC_KOOPMAN_HPP
#define LAGSPEC_KOOPMAN_HPP

#include <vector>

#include <Eigen/Dense>

#include "lagspec/signal.hpp"

namespace lagspec {

/// Discretized Fourier atom xi_n = e^{i n step x}, n = 0..n-1; squared norm N.
Eigen::VectorXcd fourier_atom(double frequency, Eigen::Index n, double step);

/// k x k Hermitian PSD matrix of inner products of the scaled atoms
/// a_j xi_j / sqrt(tau). Its eigenvalues equal the nonzero spectrum of the
/// mode-only operator on [0, tau].
struct GramMatrix {
  Eigen::MatrixXcd entries;
  Eigen::Index size() const { return entries.rows(); }
};

/// G_jj = |a_j|^2; G_jl = a_j conj(a_l) (e^{i(x_j-x_l)tau} - 1)/(i tau (x_j-x_l)).
/// Frequencies must be pairwise distinct.
GramMatrix finite_gram(const std::vector<DiscreteMode>& modes, double tau);

/// Descending eigenvalues of G; tends to {|a_i|^2} as tau grows.
std::vector<double> gram_spectrum(const GramMatrix& gram);

/// |<xi_x/sqrt(N), v>| for a unit vector v; 1 means v is the atom itself.
double alignment(const Eigen::VectorXcd& unit_vec, double frequency, double step);

struct FrequencyBand {
  double lo;
  double hi;
};

/// Frequency in the band maximizing alignment: coarse grid at resolution
/// pi/(N*step)/8 followed by golden-section refinement to 1e-8 band width.
/// The band must lie within the Nyquist interval (-pi/step, pi/step].
double estimate_frequency(const Eigen::VectorXcd& unit_vec, double step,
                          const FrequencyBand& band);

/// Continuous-time candidates (q + 2 k pi)/dt for k in [k_min, k_max], ascending.
std::vector<double> alias_candidates(double q, double dt, int k_min, int k_max);

}  // namespace lagspec

#endif
