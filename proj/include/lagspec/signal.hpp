#ifndef LAGSPEC_SIGNAL_HPP
#define LAGSPEC_SIGNAL_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace lagspec {

using Complex = std::complex<double>;

/// One discrete spectral mode: amplitude a and eigenfrequency x (rad per unit time).
struct DiscreteMode {
  Complex amplitude;
  double frequency;
};

/// Stationary noise component with a known analytic autocorrelation.
struct ContinuousComponentSpec {
  enum class Kind { none, ornstein_uhlenbeck, white };
  Kind kind = Kind::none;
  double sigma = 0.0;  // noise scale; rho(0) = sigma^2
  double theta = 0.0;  // OU correlation time
};

/// Transient component prescribed purely through its inner-product decay
/// c * exp(-rate * s). It has no time-domain realization; it enters the
/// pipeline only through the analytic autocorrelation.
struct TransientKernelSpec {
  enum class Kind { none, exponential };
  Kind kind = Kind::none;
  double scale = 0.0;  // c
  double rate = 0.0;
};

/// Ground-truth decomposition of a synthetic signal. Modes are kept sorted by
/// descending |amplitude|, ties broken by ascending frequency.
struct SignalSpec {
  std::vector<DiscreteMode> modes;
  ContinuousComponentSpec continuous;
  TransientKernelSpec transient;
  double sample_step = 1.0;  // dt
  double duration = 0.0;     // T
  std::uint64_t seed = 0;
};

/// Uniformly sampled complex series, values[n] = f(n * sample_step).
struct TimeSeries {
  double sample_step = 1.0;
  Eigen::VectorXcd values;
};

/// Sorts modes into the canonical order (descending |a|, ties by ascending x).
void sort_modes(std::vector<DiscreteMode>& modes);

/// Throws std::invalid_argument naming the offending field.
void validate(const SignalSpec& spec);

/// Number of samples produced by synthesize: floor(T/dt) + 1 (both endpoints).
Eigen::Index sample_count(double duration, double sample_step);

/// Realizes sum_i a_i e^{i x_i t} plus a pseudo-random stationary noise path.
/// Deterministic given spec.seed. The transient part contributes nothing here.
TimeSeries synthesize(const SignalSpec& spec);

/// Closed-form rho(s) = sum_i |a_i|^2 e^{i x_i s} + rho_c(s) + rho_NU(s), s >= 0.
Complex analytic_rho(const SignalSpec& spec, double lag);

/// First k squared amplitudes in descending order, zero-padded.
std::vector<double> ground_truth(const SignalSpec& spec, int k);

struct TorusHarmonic {
  Complex coeff;
  int wavenumber;
};

/// SignalSpec induced by the rotation theta_t = theta0 + alpha*t observed
/// through f(theta) = sum_m c_m e^{i m theta}: modes (c_m e^{i m theta0}, m*alpha).
SignalSpec torus_rotation_spec(double alpha, const std::vector<TorusHarmonic>& harmonics,
                               double dt, double duration, double initial_angle);

/// Samples the torus-rotation observable; bit-identical to synthesize() of the
/// induced spec.
TimeSeries torus_rotation(double alpha, const std::vector<TorusHarmonic>& harmonics,
                          double dt, double duration, double initial_angle);

}  // namespace lagspec

#endif
