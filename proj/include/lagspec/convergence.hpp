#ifndef LAGSPEC_CONVERGENCE_HPP
#define LAGSPEC_CONVERGENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lagspec/autocorr.hpp"
#include "lagspec/signal.hpp"

namespace lagspec {

/// Desk-scale cap on the kernel dimension N = tau/step.
inline constexpr Eigen::Index kMaxKernelDim = 2000;

struct SweepConfig {
  std::vector<double> tau_ladder;  // ascending, each an integer multiple of step
  double step = 0.1;               // fixed grid step across the ladder
  int k = 1;                       // eigenvalues tracked
  bool with_oracle = true;         // attach gram_spectrum columns when modes known
};

struct SweepRow {
  double tau = 0.0;
  std::vector<double> lambda;  // descending, length k
  std::vector<double> oracle;  // gram_spectrum, zero-padded; empty when disabled
  std::vector<double> truth;   // |a_i|^2, zero-padded
  double sup_error = 0.0;      // max_i |lambda_i - truth_i|
};

struct DecayFit {
  double exponent = 0.0;
  double r2 = 0.0;
};

struct ConvergenceReport {
  std::vector<SweepRow> rows;
  std::optional<DecayFit> decay;  // lambda_1 vs tau, attached for mode-free specs
  std::string spec_hash;
  std::uint64_t seed = 0;
  double step = 0.0;
  std::string created_at;
};

/// Per-tau grid step rule: min(0.1, pi/(4 max|x_i|)), at most an eighth of the
/// shortest mode period.
double default_grid_step(const SignalSpec& spec);

/// tau sweep over the analytic autocorrelation of the spec.
ConvergenceReport sweep_analytic(const SignalSpec& spec, const SweepConfig& config);

/// tau sweep over one long sampled path: the lag table is estimated once at
/// the largest tau and truncated per row.
ConvergenceReport sweep_empirical(const SignalSpec& spec, const TimeSeries& ts,
                                  const SweepConfig& config);

/// Least-squares slope of log(value) against log(tau); exponent is the negated
/// slope. Requires >= 3 points, all values positive.
DecayFit fit_decay(const std::vector<double>& taus, const std::vector<double>& values);

struct TailBoundResult {
  bool ok = false;
  double lambda1 = 0.0;
  double tail_mass = 0.0;  // epsilon = sum_{i > drop_count} |a_i|^2
  std::string line;
};

/// lambda_1 of the kernel built from only the modes beyond drop_count must not
/// exceed their tail mass (min-max bound).
TailBoundResult tail_bound_check(const SignalSpec& spec, int drop_count, double tau);

struct WienerResult {
  double measured = 0.0;   // cesaro_sq_mean of the full analytic rho
  double predicted = 0.0;  // sum_i |a_i|^4
};

WienerResult wiener_check(const SignalSpec& spec, double tau, double step);

}  // namespace lagspec

#endif
