#include "lagspec/autocorr.hpp"

#include <cmath>
#include <stdexcept>

#include "lagspec/errors.hpp"

namespace lagspec {

AutocorrTable make_autocorr_table(double lag_step, Eigen::VectorXcd values,
                                  AutocorrTable::Provenance provenance, double t_used) {
  if (!(lag_step > 0.0)) throw std::invalid_argument("lag_step must be positive");
  if (values.size() < 1) throw std::invalid_argument("table must hold at least the zero lag");
  if (std::abs(values[0].imag()) > 1e-9 * std::max(1.0, std::abs(values[0].real())))
    throw std::invalid_argument("rho(0) must be real");
  values[0] = Complex(values[0].real(), 0.0);
  if (values[0].real() < 0.0) throw std::invalid_argument("rho(0) must be nonnegative");

  const double tol = provenance == AutocorrTable::Provenance::empirical
                         ? 0.1 * values[0].real()
                         : 1e-12;
  for (Eigen::Index k = 1; k < values.size(); ++k) {
    if (std::abs(values[k]) > values[0].real() + tol)
      throw std::invalid_argument("|rho(k)| exceeds rho(0) beyond tolerance");
  }
  return AutocorrTable{lag_step, std::move(values), provenance, t_used};
}

AutocorrTable estimate_autocorr(const TimeSeries& ts, Eigen::Index max_lag_count) {
  const Eigen::Index m = ts.values.size();
  if (m < 2) throw std::invalid_argument("time series must hold at least 2 samples");
  if (max_lag_count < 1) throw std::invalid_argument("max_lag_count must be at least 1");
  if (max_lag_count >= m / 2)
    throw InsufficientDataError("max_lag_count " + std::to_string(max_lag_count) +
                                " must stay below half the sample count (" +
                                std::to_string(m / 2) + ")");

  Eigen::VectorXcd values(max_lag_count + 1);
  for (Eigen::Index k = 0; k <= max_lag_count; ++k) {
    // conj(f(n)) * f(n+k), so a mode a e^{ixt} estimates |a|^2 e^{ix k dt},
    // matching the analytic convention.
    const Eigen::Index terms = m - k;
    values[k] = ts.values.head(terms).dot(ts.values.segment(k, terms)) / static_cast<double>(terms);
  }
  return make_autocorr_table(ts.sample_step, std::move(values),
                             AutocorrTable::Provenance::empirical,
                             static_cast<double>(m) * ts.sample_step);
}

AutocorrTable analytic_autocorr(const SignalSpec& spec, double lag_step, Eigen::Index count) {
  if (!(lag_step > 0.0)) throw std::invalid_argument("lag_step must be positive");
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  Eigen::VectorXcd values(count);
  for (Eigen::Index k = 0; k < count; ++k)
    values[k] = analytic_rho(spec, static_cast<double>(k) * lag_step);
  return make_autocorr_table(lag_step, std::move(values), AutocorrTable::Provenance::analytic);
}

AutocorrTable analytic_autocorr(const SignalSpec& spec, const std::vector<double>& lags) {
  if (lags.empty() || lags[0] != 0.0)
    throw std::invalid_argument("lag grid must start at 0");
  if (lags.size() == 1) {
    Eigen::VectorXcd values(1);
    values[0] = analytic_rho(spec, 0.0);
    return make_autocorr_table(1.0, std::move(values), AutocorrTable::Provenance::analytic);
  }
  const double step = lags[1] - lags[0];
  if (!(step > 0.0)) throw std::invalid_argument("lags must be ascending");
  for (std::size_t k = 1; k < lags.size(); ++k) {
    if (std::abs(lags[k] - static_cast<double>(k) * step) > 1e-12 * std::max(1.0, lags.back()))
      throw std::invalid_argument("lag grid must be uniform");
  }
  return analytic_autocorr(spec, step, static_cast<Eigen::Index>(lags.size()));
}

Complex extend_hermitian(const AutocorrTable& table, Eigen::Index k) {
  const Eigen::Index abs_k = k >= 0 ? k : -k;
  if (abs_k >= table.size()) throw std::out_of_range("lag index outside table");
  return k >= 0 ? table.values[k] : std::conj(table.values[abs_k]);
}

double cesaro_sq_mean(const AutocorrTable& table, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const double coverage = static_cast<double>(table.size()) * table.lag_step;
  if (tau > coverage * (1.0 + 1e-12))
    throw std::invalid_argument("tau exceeds table coverage");
  double sum = 0.0;
  for (Eigen::Index k = 0; static_cast<double>(k) * table.lag_step < tau * (1.0 - 1e-12); ++k)
    sum += std::norm(table.values[k]);
  return table.lag_step * sum / tau;
}

}  // namespace lagspec
