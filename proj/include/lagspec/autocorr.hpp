#ifndef LAGSPEC_AUTOCORR_HPP
#define LAGSPEC_AUTOCORR_HPP

#include <Eigen/Dense>

#include "lagspec/signal.hpp"

namespace lagspec {

/// Sampled lagged moments: values[k] ~ rho(k * lag_step).
///
/// Invariants (enforced by make_autocorr_table):
///   values[0] real and >= 0; |values[k]| <= values[0] + tol, where tol is
///   10% of values[0] for empirical tables and 1e-12 for analytic ones.
struct AutocorrTable {
  enum class Provenance { empirical, analytic };

  double lag_step = 1.0;
  Eigen::VectorXcd values;
  Provenance provenance = Provenance::analytic;
  double t_used = 0.0;  // record length behind an empirical estimate

  Eigen::Index size() const { return values.size(); }
};

/// Validating constructor; truncates a tiny imaginary residue on values[0].
AutocorrTable make_autocorr_table(double lag_step, Eigen::VectorXcd values,
                                  AutocorrTable::Provenance provenance,
                                  double t_used = 0.0);

/// Finite-T estimator rho_hat(k dt) = 1/(M-k) * sum_n conj(f(n)) f(n+k) for
/// lag indices k = 0..max_lag_count. Requires max_lag_count < M/2 so every lag
/// keeps at least half the samples.
AutocorrTable estimate_autocorr(const TimeSeries& ts, Eigen::Index max_lag_count);

/// Closed-form table on the uniform grid {0, step, ..., (count-1)*step}.
AutocorrTable analytic_autocorr(const SignalSpec& spec, double lag_step, Eigen::Index count);

/// Closed-form table for an explicit ascending lag grid starting at 0; the
/// grid must be uniform so the table keeps a single lag_step.
AutocorrTable analytic_autocorr(const SignalSpec& spec, const std::vector<double>& lags);

/// rho at a signed lag index: values[k] for k >= 0, conj(values[-k]) otherwise.
Complex extend_hermitian(const AutocorrTable& table, Eigen::Index k);

/// (1/tau) * integral_0^tau |rho(s)|^2 ds by the left-endpoint rectangle rule.
/// Tends to sum_i |a_i|^4 for purely discrete spectra (Wiener) and to 0 for
/// purely continuous or transient parts.
double cesaro_sq_mean(const AutocorrTable& table, double tau);

}  // namespace lagspec

#endif
