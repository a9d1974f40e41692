#include "lagspec/signal.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace lagspec {

void sort_modes(std::vector<DiscreteMode>& modes) {
  std::stable_sort(modes.begin(), modes.end(), [](const DiscreteMode& a, const DiscreteMode& b) {
    const double ma = std::abs(a.amplitude);
    const double mb = std::abs(b.amplitude);
    if (ma != mb) return ma > mb;
    return a.frequency < b.frequency;
  });
}

void validate(const SignalSpec& spec) {
  if (!(spec.sample_step > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(spec.duration >= spec.sample_step)) throw std::invalid_argument("T must be at least dt");
  for (const auto& m : spec.modes) {
    if (m.amplitude == Complex(0.0, 0.0)) throw std::invalid_argument("modes: amplitude must be nonzero");
  }
  for (std::size_t i = 0; i < spec.modes.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.modes.size(); ++j) {
      if (spec.modes[i].frequency == spec.modes[j].frequency)
        throw std::invalid_argument("modes: frequencies must be pairwise distinct");
    }
  }
  for (std::size_t i = 0; i + 1 < spec.modes.size(); ++i) {
    const double ma = std::abs(spec.modes[i].amplitude);
    const double mb = std::abs(spec.modes[i + 1].amplitude);
    if (ma < mb || (ma == mb && spec.modes[i].frequency > spec.modes[i + 1].frequency))
      throw std::invalid_argument("modes: must be sorted by descending |amplitude|");
  }
  const auto& c = spec.continuous;
  if (c.kind == ContinuousComponentSpec::Kind::ornstein_uhlenbeck) {
    if (!(c.sigma > 0.0)) throw std::invalid_argument("continuous.sigma must be positive");
    if (!(c.theta > 0.0)) throw std::invalid_argument("continuous.theta must be positive");
  } else if (c.kind == ContinuousComponentSpec::Kind::white) {
    if (!(c.sigma > 0.0)) throw std::invalid_argument("continuous.sigma must be positive");
  }
  const auto& nu = spec.transient;
  if (nu.kind == TransientKernelSpec::Kind::exponential) {
    if (!(nu.scale > 0.0)) throw std::invalid_argument("transient.c must be positive");
    if (!(nu.rate > 0.0)) throw std::invalid_argument("transient.rate must be positive");
  }
}

Eigen::Index sample_count(double duration, double sample_step) {
  return static_cast<Eigen::Index>(std::floor(duration / sample_step + 1e-9)) + 1;
}

namespace {

// Standard complex Gaussian: E|xi|^2 = 1, independent real/imag parts.
Complex complex_gaussian(std::mt19937_64& rng, std::normal_distribution<double>& normal) {
  const double re = normal(rng);
  const double im = normal(rng);
  return Complex(re * M_SQRT1_2, im * M_SQRT1_2);
}

}  // namespace

TimeSeries synthesize(const SignalSpec& spec) {
  validate(spec);
  const Eigen::Index n = sample_count(spec.duration, spec.sample_step);
  Eigen::VectorXcd values = Eigen::VectorXcd::Zero(n);

  for (const auto& mode : spec.modes) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double phase = mode.frequency * static_cast<double>(i) * spec.sample_step;
      values[i] += mode.amplitude * std::polar(1.0, phase);
    }
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto& c = spec.continuous;
  if (c.kind == ContinuousComponentSpec::Kind::white) {
    for (Eigen::Index i = 0; i < n; ++i) values[i] += c.sigma * complex_gaussian(rng, normal);
  } else if (c.kind == ContinuousComponentSpec::Kind::ornstein_uhlenbeck) {
    // Exact discrete recursion: preserves sigma^2 exp(-s/theta) at sample times.
    const double decay = std::exp(-spec.sample_step / c.theta);
    const double drive = c.sigma * std::sqrt(1.0 - decay * decay);
    Complex state = c.sigma * complex_gaussian(rng, normal);  // stationary start
    values[0] += state;
    for (Eigen::Index i = 1; i < n; ++i) {
      state = decay * state + drive * complex_gaussian(rng, normal);
      values[i] += state;
    }
  }

  return TimeSeries{spec.sample_step, std::move(values)};
}

Complex analytic_rho(const SignalSpec& spec, double lag) {
  if (lag < 0.0) throw std::invalid_argument("lag must be nonnegative");
  Complex rho(0.0, 0.0);
  for (const auto& mode : spec.modes) {
    rho += std::norm(mode.amplitude) * std::polar(1.0, mode.frequency * lag);
  }
  const auto& c = spec.continuous;
  if (c.kind == ContinuousComponentSpec::Kind::ornstein_uhlenbeck) {
    rho += c.sigma * c.sigma * std::exp(-lag / c.theta);
  } else if (c.kind == ContinuousComponentSpec::Kind::white) {
    if (lag == 0.0) rho += c.sigma * c.sigma;
  }
  const auto& nu = spec.transient;
  if (nu.kind == TransientKernelSpec::Kind::exponential) {
    rho += nu.scale * std::exp(-nu.rate * lag);
  }
  return rho;
}

std::vector<double> ground_truth(const SignalSpec& spec, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<double> masses;
  masses.reserve(spec.modes.size());
  for (const auto& mode : spec.modes) masses.push_back(std::norm(mode.amplitude));
  std::sort(masses.begin(), masses.end(), std::greater<double>());
  masses.resize(static_cast<std::size_t>(k), 0.0);
  return masses;
}

SignalSpec torus_rotation_spec(double alpha, const std::vector<TorusHarmonic>& harmonics,
                               double dt, double duration, double initial_angle) {
  if (alpha == 0.0) throw std::invalid_argument("alpha must be nonzero");
  std::unordered_set<int> seen;
  for (const auto& h : harmonics) {
    if (h.wavenumber == 0 && h.coeff != Complex(0.0, 0.0))
      throw std::invalid_argument("wavenumber 0 requires zero coefficient (zero temporal mean)");
    if (!seen.insert(h.wavenumber).second)
      throw std::invalid_argument("wavenumbers must be pairwise distinct");
  }
  SignalSpec spec;
  spec.sample_step = dt;
  spec.duration = duration;
  for (const auto& h : harmonics) {
    if (h.wavenumber == 0) continue;
    const Complex amplitude = h.coeff * std::polar(1.0, h.wavenumber * initial_angle);
    spec.modes.push_back(DiscreteMode{amplitude, h.wavenumber * alpha});
  }
  sort_modes(spec.modes);
  return spec;
}

TimeSeries torus_rotation(double alpha, const std::vector<TorusHarmonic>& harmonics,
                          double dt, double duration, double initial_angle) {
  return synthesize(torus_rotation_spec(alpha, harmonics, dt, duration, initial_angle));
}

}  // namespace lagspec
