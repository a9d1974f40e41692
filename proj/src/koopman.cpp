#include "lagspec/koopman.hpp"

#include <cmath>
#include <stdexcept>

#include "lagspec/hs_operator.hpp"

namespace lagspec {

Eigen::VectorXcd fourier_atom(double frequency, Eigen::Index n, double step) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  Eigen::VectorXcd atom(n);
  for (Eigen::Index j = 0; j < n; ++j)
    atom[j] = std::polar(1.0, frequency * static_cast<double>(j) * step);
  return atom;
}

GramMatrix finite_gram(const std::vector<DiscreteMode>& modes, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const auto k = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd entries(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    entries(j, j) = std::norm(modes[j].amplitude);
    for (Eigen::Index l = 0; l < j; ++l) {
      const double dx = modes[j].frequency - modes[l].frequency;
      if (dx == 0.0) throw std::invalid_argument("mode frequencies must be pairwise distinct");
      const Complex numer = std::polar(1.0, dx * tau) - Complex(1.0, 0.0);
      const Complex value =
          modes[j].amplitude * std::conj(modes[l].amplitude) * numer / (Complex(0.0, 1.0) * tau * dx);
      entries(j, l) = value;
      entries(l, j) = std::conj(value);
    }
  }
  return GramMatrix{std::move(entries)};
}

std::vector<double> gram_spectrum(const GramMatrix& gram) {
  if (gram.size() == 0) return {};
  const Eigen::VectorXd values = eigh_values(gram.entries);
  return {values.data(), values.data() + values.size()};
}

double alignment(const Eigen::VectorXcd& unit_vec, double frequency, double step) {
  const Eigen::Index n = unit_vec.size();
  if (std::abs(unit_vec.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("eigenvector must be unit length");
  const Eigen::VectorXcd atom = fourier_atom(frequency, n, step);
  return std::abs(atom.dot(unit_vec)) / std::sqrt(static_cast<double>(n));
}

double estimate_frequency(const Eigen::VectorXcd& unit_vec, double step,
                          const FrequencyBand& band) {
  const Eigen::Index n = unit_vec.size();
  if (!(band.hi > band.lo)) throw std::invalid_argument("frequency band must be nonempty");
  const double nyquist = M_PI / step;
  if (band.lo <= -nyquist - 1e-12 || band.hi > nyquist + 1e-12)
    throw std::invalid_argument("band must lie within the Nyquist interval");

  const double resolution = M_PI / (static_cast<double>(n) * step) / 8.0;
  double best_x = band.lo;
  double best_score = -1.0;
  const auto steps = static_cast<Eigen::Index>(std::ceil((band.hi - band.lo) / resolution));
  for (Eigen::Index i = 0; i <= steps; ++i) {
    const double x = std::min(band.hi, band.lo + static_cast<double>(i) * resolution);
    const double score = alignment(unit_vec, x, step);
    if (score > best_score) {
      best_score = score;
      best_x = x;
    }
  }

  // Golden-section refinement around the coarse peak.
  double lo = std::max(band.lo, best_x - resolution);
  double hi = std::min(band.hi, best_x + resolution);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - gr * (hi - lo);
  double b = lo + gr * (hi - lo);
  double fa = alignment(unit_vec, a, step);
  double fb = alignment(unit_vec, b, step);
  while (hi - lo > 1e-8) {
    if (fa > fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = alignment(unit_vec, a, step);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = alignment(unit_vec, b, step);
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> alias_candidates(double q, double dt, int k_min, int k_max) {
  if (k_max < k_min) throw std::invalid_argument("k range must be nonempty");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  std::vector<double> candidates;
  candidates.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k)
    candidates.push_back((q + 2.0 * M_PI * static_cast<double>(k)) / dt);
  return candidates;
}

}  // namespace lagspec
