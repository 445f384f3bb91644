#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/stats.hpp"

using namespace focklab;
using namespace focklab::stats;

TEST_CASE("fit_line recovers an exact line") {
  const std::vector<double> x = {0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double v : x) y.push_back(-1.5 * v + 0.25);
  const auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(fit_line(std::vector<double>{1.0}, std::vector<double>{2.0}), FitError);
}

TEST_CASE("least squares with two regressors") {
  std::vector<double> a, b, one, y;
  for (int i = 1; i <= 20; ++i) {
    a.push_back(i);
    b.push_back(std::log(i));
    one.push_back(1.0);
    y.push_back(-1.0 * i + 3.0 * std::log(i) + 0.5);
  }
  const auto beta = least_squares({a, b, one}, y);
  CHECK(beta[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(beta[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(beta[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(least_squares({a, a}, y), FitError);
}

TEST_CASE("Kolmogorov survival function") {
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(1.36) == doctest::Approx(0.0494).epsilon(0.01));
  CHECK(kolmogorov_survival(1.628) == doctest::Approx(0.0100).epsilon(0.01));
  CHECK(kolmogorov_survival(5.0) < 1e-20);
}

TEST_CASE("two-sample KS test") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(5000), b(5000), c(5000);
  for (auto& v : a) v = g(rng);
  for (auto& v : b) v = g(rng);
  for (auto& v : c) v = g(rng) + 0.2;
  const auto same = ks_two_sample(a, b);
  CHECK(same.p_value > 0.01);
  const auto shifted = ks_two_sample(a, c);
  CHECK(shifted.p_value < 1e-6);
  CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}).statistic == 0.0);
  CHECK(ks_two_sample({1, 2, 3}, {4, 5, 6}).statistic == 1.0);
  CHECK_THROWS_AS(ks_two_sample({}, {1.0}), DomainError);
}
