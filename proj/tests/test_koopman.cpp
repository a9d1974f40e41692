#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lagspec/autocorr.hpp"
#include "lagspec/hs_operator.hpp"
#include "lagspec/koopman.hpp"
#include "lagspec/signal.hpp"

using namespace lagspec;

namespace {

SignalSpec mode_spec(std::vector<DiscreteMode> modes) {
  SignalSpec spec;
  spec.modes = std::move(modes);
  sort_modes(spec.modes);
  spec.sample_step = 0.1;
  spec.duration = 10.0;
  return spec;
}

}  // namespace

TEST_CASE("fourier atom has squared norm N") {
  const Eigen::VectorXcd atom = fourier_atom(1.3, 64, 0.1);
  CHECK(atom.squaredNorm() == doctest::Approx(64.0).epsilon(1e-14));
}

TEST_CASE("finite gram closed form") {
  SUBCASE("one mode") {
    const GramMatrix g = finite_gram({{Complex(1.2, -0.4), 1.0}}, 10.0);
    REQUIRE(g.size() == 1);
    CHECK(g.entries(0, 0).real() == doctest::Approx(std::norm(Complex(1.2, -0.4))).epsilon(1e-14));
    CHECK(g.entries(0, 0).imag() == 0.0);
  }
  SUBCASE("frequencies separated by 2 pi / tau decouple exactly") {
    const double tau = 25.0;
    const GramMatrix g = finite_gram({{1.0, 1.0}, {1.0, 1.0 + 2.0 * M_PI / tau}}, tau);
    CHECK(std::abs(g.entries(0, 1)) < 1e-14);
    CHECK(std::abs(g.entries(1, 0)) < 1e-14);
  }
  SUBCASE("two-mode off-diagonal magnitude") {
    const GramMatrix g = finite_gram({{1.0, 1.0}, {0.5, 1.3}}, 10.0);
    const double expected = 0.5 * 2.0 * std::sin(1.5) / 3.0;  // |e^{3i}-1| = 2 sin(1.5)
    CHECK(std::abs(g.entries(0, 1)) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(g.entries(1, 0)) == doctest::Approx(expected).epsilon(1e-12));
    CHECK((g.entries - g.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-16);
  }
  SUBCASE("repeated frequencies are rejected") {
    CHECK_THROWS_AS(finite_gram({{1.0, 1.0}, {0.5, 1.0}}, 10.0), std::invalid_argument);
  }
}

TEST_CASE("gram off-diagonals obey the 2|a_j a_l|/(tau dx) bound and decay as 1/tau") {
  const std::vector<DiscreteMode> modes{{1.0, 1.0}, {0.7, 1.4}, {0.5, -0.9}};
  for (double tau : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    const GramMatrix g = finite_gram(modes, tau);
    for (Eigen::Index j = 0; j < 3; ++j) {
      for (Eigen::Index l = 0; l < 3; ++l) {
        if (j == l) continue;
        const double bound = 2.0 * std::abs(modes[j].amplitude) * std::abs(modes[l].amplitude) /
                             (tau * std::abs(modes[j].frequency - modes[l].frequency));
        CHECK(std::abs(g.entries(j, l)) <= bound * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("gram spectrum") {
  SUBCASE("diagonal") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 0.25;
    const auto spectrum = gram_spectrum(GramMatrix{d});
    CHECK(spectrum[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spectrum[1] == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("equal diagonals split by the coupling magnitude") {
    Eigen::MatrixXcd m(2, 2);
    const Complex coupling = 0.3 * std::polar(1.0, 0.8);
    m << 1.0, coupling, std::conj(coupling), 1.0;
    const auto spectrum = gram_spectrum(GramMatrix{m});
    CHECK(spectrum[0] == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(spectrum[1] == doctest::Approx(0.7).epsilon(1e-12));
  }
  SUBCASE("agrees with the kernel spectrum of the same modes") {
    const SignalSpec spec = mode_spec({{1.0, 1.0}, {0.5, 1.3}});
    const double tau = 10.0;
    const double step = 0.01;
    const auto n = static_cast<Eigen::Index>(tau / step);
    const AutocorrTable table = analytic_autocorr(spec, step, n);
    const auto kernel_top = top_eigenvalues(table, tau, n, 2);
    const auto oracle = gram_spectrum(finite_gram(spec.modes, tau));
    const double tol = 5.0 * 2.0 * step * 1.3 * 1.25 + 1e-8;  // 5 k step max|x| rho(0)
    CHECK(std::abs(kernel_top[0] - oracle[0]) < tol);
    CHECK(std::abs(kernel_top[1] - oracle[1]) < tol);
  }
}

TEST_CASE("gram spectrum approaches the mode masses at the Gershgorin rate") {
  const std::vector<DiscreteMode> modes{{1.0, 1.0}, {0.7, 1.4}, {0.5, -0.9}};
  const std::vector<double> truth{1.0, 0.49, 0.25};
  double c = 0.0;
  for (std::size_t j = 0; j < modes.size(); ++j)
    for (std::size_t l = 0; l < modes.size(); ++l) {
      if (j == l) continue;
      c = std::max(c, 2.0 * std::abs(modes[j].amplitude) * std::abs(modes[l].amplitude) /
                          std::abs(modes[j].frequency - modes[l].frequency));
    }
  for (double tau : {20.0, 80.0, 320.0}) {
    const auto spectrum = gram_spectrum(finite_gram(modes, tau));
    for (std::size_t i = 0; i < truth.size(); ++i)
      CHECK(std::abs(spectrum[i] - truth[i]) <= 3.0 * c / tau + 1e-12);
  }
}

TEST_CASE("alignment") {
  const Eigen::Index n = 128;
  const double step = 0.1;
  SUBCASE("the atom aligns with itself") {
    const Eigen::VectorXcd v = fourier_atom(1.3, n, step) / std::sqrt(static_cast<double>(n));
    CHECK(alignment(v, 1.3, step) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("atoms a full bin apart are exactly orthogonal") {
    const double x = 0.7;
    const double other = x + 2.0 * M_PI / (static_cast<double>(n) * step);
    const Eigen::VectorXcd v = fourier_atom(x, n, step) / std::sqrt(static_cast<double>(n));
    CHECK(alignment(v, other, step) < 1e-12);
  }
  SUBCASE("top eigenvector of a rank-1 kernel is the atom") {
    const SignalSpec spec = mode_spec({{1.0, 2.0}});
    const AutocorrTable table = analytic_autocorr(spec, 0.1, 500);
    const EigenResult r = eigh(build_kernel(table, 50.0, 500).entries);
    CHECK(alignment(r.eigenvectors.col(0), 2.0, 0.1) >= 0.999);
  }
  SUBCASE("unnormalized input is rejected") {
    const Eigen::VectorXcd v = fourier_atom(1.0, n, step);  // norm sqrt(N), not 1
    CHECK_THROWS_AS(alignment(v, 1.0, step), std::invalid_argument);
  }
}

TEST_CASE("frequency estimation") {
  const Eigen::Index n = 400;
  const double step = 0.1;
  SUBCASE("recovers the atom frequency") {
    const Eigen::VectorXcd v = fourier_atom(1.3, n, step) / std::sqrt(static_cast<double>(n));
    const double x = estimate_frequency(v, step, FrequencyBand{0.0, 3.0});
    CHECK(std::abs(x - 1.3) < 1e-6);
  }
  SUBCASE("recovers the dominant mode of a two-mode kernel") {
    const SignalSpec spec = mode_spec({{1.0, 1.0}, {0.5, 1.5}});
    const AutocorrTable table = analytic_autocorr(spec, step, n);
    const EigenResult r = eigh(build_kernel(table, 40.0, n).entries);
    const double x = estimate_frequency(r.eigenvectors.col(0), step, FrequencyBand{0.5, 1.25});
    CHECK(std::abs(x - 1.0) <= 2.0 * M_PI / (static_cast<double>(n) * step));
  }
  SUBCASE("noise-only kernel peaks where its spectral density does") {
    // the OU density sigma^2 2theta/(1 + theta^2 x^2) is maximal at x = 0,
    // so the top eigenvector of the Toeplitz kernel sits in the lowest bin
    SignalSpec spec;
    spec.continuous = {ContinuousComponentSpec::Kind::ornstein_uhlenbeck, 1.0, 1.0};
    spec.sample_step = step;
    spec.duration = 10.0;
    const AutocorrTable table = analytic_autocorr(spec, step, n);
    const EigenResult r = eigh(build_kernel(table, 40.0, n).entries);
    const double nyquist = M_PI / step;
    const double x =
        estimate_frequency(r.eigenvectors.col(0), step, FrequencyBand{-nyquist * (1 - 1e-9), nyquist});
    CHECK(std::abs(x) <= 2.0 * M_PI / (static_cast<double>(n) * step));
  }
  SUBCASE("empty band is rejected") {
    const Eigen::VectorXcd v = fourier_atom(1.0, n, step) / std::sqrt(static_cast<double>(n));
    CHECK_THROWS_AS(estimate_frequency(v, step, FrequencyBand{1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_frequency(v, step, FrequencyBand{0.0, 100.0}), std::invalid_argument);
  }
}

TEST_CASE("alias candidates") {
  SUBCASE("basic arithmetic") {
    const auto c = alias_candidates(M_PI / 2.0, 1.0, -1, 1);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(-3.0 * M_PI / 2.0).epsilon(1e-14));
    CHECK(c[1] == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    CHECK(c[2] == doctest::Approx(5.0 * M_PI / 2.0).epsilon(1e-14));
  }
  SUBCASE("half-step sampling") {
    const auto c = alias_candidates(0.0, 0.5, 0, 1);
    CHECK(c == std::vector<double>{0.0, 4.0 * M_PI});
  }
  SUBCASE("recovers x = 7 sampled at dt = 1") {
    const double q = 7.0 - 2.0 * M_PI;
    const auto c = alias_candidates(q, 1.0, 0, 2);
    bool found = false;
    for (double x : c) found = found || std::abs(x - 7.0) < 1e-12;
    CHECK(found);
  }
  SUBCASE("every candidate reduces back to q modulo 2 pi") {
    const double q = 1.234;
    const double dt = 0.3;
    for (double x : alias_candidates(q, dt, -3, 3)) {
      const double residue = std::remainder(x * dt - q, 2.0 * M_PI);
      CHECK(std::abs(residue) < 1e-12);
    }
  }
}
