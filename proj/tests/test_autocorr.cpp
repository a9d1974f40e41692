#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lagspec/autocorr.hpp"
#include "lagspec/errors.hpp"
#include "lagspec/signal.hpp"

using namespace lagspec;

namespace {

TimeSeries series_from(std::initializer_list<Complex> values, double dt = 1.0) {
  TimeSeries ts;
  ts.sample_step = dt;
  ts.values.resize(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const Complex& v : values) ts.values[i++] = v;
  return ts;
}

}  // namespace

TEST_CASE("constant and alternating signals") {
  const AutocorrTable c = estimate_autocorr(series_from({1.0, 1.0, 1.0, 1.0}), 1);
  CHECK(c.values[0] == Complex(1.0, 0.0));
  CHECK(std::abs(c.values[1] - Complex(1.0, 0.0)) < 1e-15);
  CHECK(c.provenance == AutocorrTable::Provenance::empirical);
  CHECK(c.t_used == doctest::Approx(4.0));

  const AutocorrTable a = estimate_autocorr(series_from({1.0, -1.0, 1.0, -1.0}), 1);
  CHECK(a.values[0] == Complex(1.0, 0.0));
  CHECK(std::abs(a.values[1] - Complex(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("estimator tracks the closed form of a single mode") {
  SignalSpec spec;
  spec.modes = {{1.0, 2.0}};
  spec.sample_step = 0.05;
  spec.duration = 500.0;
  const AutocorrTable table = estimate_autocorr(synthesize(spec), 100);
  double err = 0.0;
  for (Eigen::Index k = 0; k <= 100; ++k) {
    const Complex expected = std::polar(1.0, 2.0 * 0.05 * static_cast<double>(k));
    err = std::max(err, std::abs(table.values[k] - expected));
  }
  CHECK(err <= 0.02);
}

TEST_CASE("estimator rejects lag counts that starve the average") {
  const TimeSeries ts = series_from({1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
  CHECK_THROWS_AS(estimate_autocorr(ts, 3), InsufficientDataError);
  CHECK_NOTHROW(estimate_autocorr(ts, 2));
}

TEST_CASE("hermitian lag extension") {
  Eigen::VectorXcd values(3);
  values << Complex(2.0, 0.0), Complex(0.0, 1.0), Complex(0.5, -0.5);
  const AutocorrTable table = make_autocorr_table(1.0, values, AutocorrTable::Provenance::empirical);
  CHECK(extend_hermitian(table, -1) == Complex(0.0, -1.0));
  CHECK(extend_hermitian(table, 0) == Complex(2.0, 0.0));
  CHECK(extend_hermitian(table, 2) == Complex(0.5, -0.5));
  CHECK_THROWS_AS(extend_hermitian(table, 3), std::out_of_range);
  CHECK_THROWS_AS(extend_hermitian(table, -3), std::out_of_range);
}

TEST_CASE("real kernels are even under lag extension") {
  SignalSpec spec;
  spec.continuous = {ContinuousComponentSpec::Kind::ornstein_uhlenbeck, 1.0, 1.0};
  spec.sample_step = 1.0;
  spec.duration = 10.0;
  const AutocorrTable table = analytic_autocorr(spec, 1.0, 5);
  CHECK(extend_hermitian(table, -3).real() == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
  CHECK(extend_hermitian(table, -3).imag() == 0.0);
}

TEST_CASE("hermitian symmetry holds for every lag") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  Eigen::VectorXcd values(16);
  values[0] = Complex(1.0, 0.0);
  for (Eigen::Index k = 1; k < 16; ++k) values[k] = Complex(u(rng), u(rng));
  const AutocorrTable table = make_autocorr_table(0.5, values, AutocorrTable::Provenance::analytic);
  for (Eigen::Index k = -15; k <= 15; ++k)
    CHECK(extend_hermitian(table, k) == std::conj(extend_hermitian(table, -k)));
}

TEST_CASE("table invariants are enforced") {
  Eigen::VectorXcd bad_imag(2);
  bad_imag << Complex(1.0, 0.5), Complex(0.1, 0.0);
  CHECK_THROWS_AS(make_autocorr_table(1.0, bad_imag, AutocorrTable::Provenance::analytic),
                  std::invalid_argument);

  Eigen::VectorXcd negative(1);
  negative << Complex(-1.0, 0.0);
  CHECK_THROWS_AS(make_autocorr_table(1.0, negative, AutocorrTable::Provenance::analytic),
                  std::invalid_argument);

  Eigen::VectorXcd oversized(2);
  oversized << Complex(1.0, 0.0), Complex(1.5, 0.0);
  CHECK_THROWS_AS(make_autocorr_table(1.0, oversized, AutocorrTable::Provenance::analytic),
                  std::invalid_argument);
  // the same magnitude overshoot is within the empirical tolerance of 10%
  Eigen::VectorXcd within(2);
  within << Complex(1.0, 0.0), Complex(1.05, 0.0);
  CHECK_NOTHROW(make_autocorr_table(1.0, within, AutocorrTable::Provenance::empirical));
}

TEST_CASE("cesaro squared mean") {
  SUBCASE("single unit mode over whole periods") {
    SignalSpec spec;
    spec.modes = {{1.0, 2.0 * M_PI}};  // period 1
    spec.sample_step = 0.01;
    spec.duration = 10.0;
    const AutocorrTable table = analytic_autocorr(spec, 0.01, 501);
    CHECK(cesaro_sq_mean(table, 5.0) == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("OU closed-form integral") {
    SignalSpec spec;
    spec.continuous = {ContinuousComponentSpec::Kind::ornstein_uhlenbeck, 1.0, 1.0};
    spec.sample_step = 0.01;
    spec.duration = 100.0;
    const AutocorrTable table = analytic_autocorr(spec, 0.01, 10000);
    const double expected = (1.0 / 200.0) * (1.0 - std::exp(-200.0));
    CHECK(cesaro_sq_mean(table, 100.0) == doctest::Approx(expected).epsilon(0.05));
  }
  SUBCASE("zero table") {
    Eigen::VectorXcd zeros = Eigen::VectorXcd::Zero(10);
    const AutocorrTable table = make_autocorr_table(1.0, zeros, AutocorrTable::Provenance::analytic);
    CHECK(cesaro_sq_mean(table, 10.0) == 0.0);
  }
  SUBCASE("tau beyond coverage is rejected") {
    Eigen::VectorXcd zeros = Eigen::VectorXcd::Zero(10);
    const AutocorrTable table = make_autocorr_table(1.0, zeros, AutocorrTable::Provenance::analytic);
    CHECK_THROWS_AS(cesaro_sq_mean(table, 11.0), std::invalid_argument);
  }
}

TEST_CASE("cesaro mean converges to the quartic mode sum on a tau ladder") {
  SignalSpec spec;
  spec.modes = {{1.0, 1.0}, {0.5, 2.3}};
  sort_modes(spec.modes);
  spec.sample_step = 0.01;
  spec.duration = 10.0;
  const double target = 1.0 + 0.0625;  // sum |a|^4
  const AutocorrTable table = analytic_autocorr(spec, 0.01, 80001);
  // O(1/tau) + O(step): the oscillatory remainder is bounded by
  // 2|a1 a2|/(|x1-x2| tau) = 0.385/tau; the rectangle-rule bias by ~step.
  for (double tau : {100.0, 200.0, 400.0, 800.0}) {
    const double err = std::abs(cesaro_sq_mean(table, tau) - target);
    CHECK(err <= 0.385 / tau + 0.01);
  }
}
