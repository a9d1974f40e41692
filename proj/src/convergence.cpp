#include "lagspec/convergence.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include "lagspec/errors.hpp"
#include "lagspec/hs_operator.hpp"
#include "lagspec/io.hpp"
#include "lagspec/koopman.hpp"

namespace lagspec {

double default_grid_step(const SignalSpec& spec) {
  double max_freq = 0.0;
  for (const auto& mode : spec.modes) max_freq = std::max(max_freq, std::abs(mode.frequency));
  if (max_freq == 0.0) return 0.1;
  return std::min(0.1, M_PI / (4.0 * max_freq));
}

namespace {

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

Eigen::Index rows_for_tau(double tau, double step) {
  const double ratio = tau / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("every tau must be an integer multiple of the grid step");
  const auto n = static_cast<Eigen::Index>(rounded);
  if (n < 1) throw std::invalid_argument("tau must be at least one grid step");
  if (n > kMaxKernelDim)
    throw std::invalid_argument("kernel dimension tau/step exceeds the desk-scale cap of 2000");
  return n;
}

void validate_config(const SweepConfig& config) {
  if (!(config.step > 0.0)) throw std::invalid_argument("step must be positive");
  if (config.k < 1) throw std::invalid_argument("k must be at least 1");
  for (std::size_t i = 0; i + 1 < config.tau_ladder.size(); ++i) {
    if (!(config.tau_ladder[i] < config.tau_ladder[i + 1]))
      throw std::invalid_argument("tau ladder must be strictly ascending");
  }
}

std::vector<double> padded(std::vector<double> v, int k) {
  v.resize(static_cast<std::size_t>(k), 0.0);
  return v;
}

ConvergenceReport run_sweep(const SignalSpec& spec, const SweepConfig& config,
                            const AutocorrTable* table) {
  validate_config(config);
  ConvergenceReport report;
  report.spec_hash = spec_hash(spec);
  report.seed = spec.seed;
  report.step = config.step;
  report.created_at = timestamp_utc();

  const std::vector<double> truth = ground_truth(spec, config.k);
  std::vector<double> lambda1;

  for (double tau : config.tau_ladder) {
    const Eigen::Index n = rows_for_tau(tau, config.step);
    if (config.k > n) throw std::invalid_argument("k exceeds kernel dimension at the smallest tau");

    std::vector<double> lambda;
    try {
      if (table != nullptr) {
        lambda = top_eigenvalues(*table, tau, n, config.k);
      } else {
        const AutocorrTable analytic = analytic_autocorr(spec, config.step, n);
        lambda = top_eigenvalues(analytic, tau, n, config.k);
      }
    } catch (const InsufficientDataError& e) {
      throw InsufficientDataError("sweep failed at tau=" + std::to_string(tau) + ": " + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep failed at tau=" + std::to_string(tau) + ": " + e.what());
    }

    SweepRow row;
    row.tau = tau;
    row.lambda = lambda;
    row.truth = truth;
    if (config.with_oracle && !spec.modes.empty())
      row.oracle = padded(gram_spectrum(finite_gram(spec.modes, tau)), config.k);
    double sup = 0.0;
    for (int i = 0; i < config.k; ++i)
      sup = std::max(sup, std::abs(lambda[static_cast<std::size_t>(i)] -
                                   truth[static_cast<std::size_t>(i)]));
    row.sup_error = sup;
    lambda1.push_back(lambda.empty() ? 0.0 : lambda[0]);
    report.rows.push_back(std::move(row));
  }

  // Decay fit only tells a story when there is no discrete mass to converge to.
  if (spec.modes.empty() && report.rows.size() >= 3) {
    bool positive = true;
    for (double v : lambda1) positive = positive && v > 0.0;
    if (positive) report.decay = fit_decay(config.tau_ladder, lambda1);
  }
  return report;
}

}  // namespace

ConvergenceReport sweep_analytic(const SignalSpec& spec, const SweepConfig& config) {
  return run_sweep(spec, config, nullptr);
}

ConvergenceReport sweep_empirical(const SignalSpec& spec, const TimeSeries& ts,
                                  const SweepConfig& config) {
  validate_config(config);
  if (config.tau_ladder.empty()) return run_sweep(spec, config, nullptr);

  const double max_tau = config.tau_ladder.back();
  const Eigen::Index n_max = rows_for_tau(max_tau, config.step);
  const double ratio = config.step / ts.sample_step;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("sample step must divide the grid step exactly");
  const auto stride = static_cast<Eigen::Index>(rounded);

  const Eigen::Index max_lag = (n_max - 1) * stride;
  if (max_lag >= ts.values.size() / 2)
    throw InsufficientDataError("time series too short: needs " + std::to_string(max_lag) +
                                " lags but only " + std::to_string(ts.values.size() / 2 - 1) +
                                " are available");
  const AutocorrTable table = estimate_autocorr(ts, max_lag);
  return run_sweep(spec, config, &table);
}

DecayFit fit_decay(const std::vector<double>& taus, const std::vector<double>& values) {
  if (taus.size() != values.size()) throw std::invalid_argument("taus and values must pair up");
  const std::size_t n = taus.size();
  if (n < 3) throw std::invalid_argument("decay fit needs at least 3 points");
  for (double v : values)
    if (!(v > 0.0)) throw std::invalid_argument("decay fit needs positive values");

  double sx = 0.0, sy = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(taus[i]);
    ys[i] = std::log(values[i]);
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("taus must not be all equal");
  const double slope = sxy / sxx;
  double r2 = 1.0;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double resid = ys[i] - my - slope * (xs[i] - mx);
      ss_res += resid * resid;
    }
    r2 = 1.0 - ss_res / syy;
  }
  return DecayFit{-slope, r2};
}

TailBoundResult tail_bound_check(const SignalSpec& spec, int drop_count, double tau) {
  if (drop_count < 0) throw std::invalid_argument("drop_count must be nonnegative");

  SignalSpec tail = spec;
  tail.modes.assign(
      spec.modes.begin() + std::min<std::size_t>(static_cast<std::size_t>(drop_count), spec.modes.size()),
      spec.modes.end());
  tail.continuous = ContinuousComponentSpec{};
  tail.transient = TransientKernelSpec{};

  double tail_mass = 0.0;
  for (const auto& mode : tail.modes) tail_mass += std::norm(mode.amplitude);

  double lambda1 = 0.0;
  if (!tail.modes.empty()) {
    const double step = default_grid_step(tail);
    const auto n = static_cast<Eigen::Index>(std::round(tau / step));
    const Eigen::Index n_used = std::min(n, kMaxKernelDim);
    const double step_used = tau / static_cast<double>(n_used);
    const AutocorrTable table = analytic_autocorr(tail, step_used, n_used);
    lambda1 = top_eigenvalues(table, tau, n_used, 1)[0];
  }

  TailBoundResult result;
  result.lambda1 = lambda1;
  result.tail_mass = tail_mass;
  result.ok = lambda1 <= tail_mass + 1e-10;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "tail_bound tau=%g drop=%d lambda1=%.6g epsilon=%.6g -> %s", tau, drop_count,
                lambda1, tail_mass, result.ok ? "ok" : "VIOLATED");
  result.line = buf;
  return result;
}

WienerResult wiener_check(const SignalSpec& spec, double tau, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const auto count = static_cast<Eigen::Index>(std::ceil(tau / step - 1e-12));
  const AutocorrTable table = analytic_autocorr(spec, step, std::max<Eigen::Index>(count, 1));
  WienerResult result;
  result.measured = cesaro_sq_mean(table, tau);
  result.predicted = 0.0;
  for (const auto& mode : spec.modes) {
    const double mass = std::norm(mode.amplitude);
    result.predicted += mass * mass;
  }
  return result;
}

}  // namespace lagspec
