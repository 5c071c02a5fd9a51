#include <doctest.h>

#include <cmath>
#include <vector>

#include "bugnav/stats.hpp"

using namespace bugnav;

TEST_SUITE("stats") {
  TEST_CASE("quantiles interpolate between order statistics") {
    const std::vector<double> v = {4, 1, 3, 2};
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 4.0);
    CHECK(quantile(v, 0.5) == 2.5);
    CHECK(quantile(v, 0.25) == doctest::Approx(1.75));
    CHECK(mean(v) == 2.5);
    CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), StatsError);
    CHECK_THROWS_AS(quantile(v, 1.5), StatsError);
  }

  TEST_CASE("bootstrap p-values") {
    Rng rng(1);
    const std::vector<double> a = {1.0, 1.1, 0.9, 1.05, 0.95, 1.0, 1.02, 0.98};
    const std::vector<double> far = {5.0, 5.1, 4.9, 5.05, 4.95, 5.0, 5.02, 4.98};
    const double same = bootstrap_test(a, a, 2000, rng);
    CHECK(same > 0.9);
    CHECK(same <= 1.0);
    CHECK(bootstrap_test(a, far, 2000, rng) == doctest::Approx(1.0 / 2001.0));
    CHECK_THROWS_AS(bootstrap_test(std::vector<double>{1.0}, a, 100, rng), StatsError);
    CHECK_THROWS_AS(bootstrap_test(a, a, 0, rng), StatsError);

    // Same seed, same answer.
    Rng r1(7), r2(7);
    const std::vector<double> b = {1.3, 0.8, 1.2, 1.4, 0.7};
    CHECK(bootstrap_test(a, b, 500, r1) == bootstrap_test(a, b, 500, r2));
  }

  TEST_CASE("OLS matches the closed form") {
    const std::vector<double> x = {0, 1, 2, 3, 4};
    const std::vector<double> y = {1, 3, 5, 7, 9};
    const auto fit = linear_regression(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0));

    // Residuals y - (a + b x) = {0.5, -1, 0.5} around slope 1, intercept 0.5.
    const auto noisy = linear_regression(std::vector<double>{0, 1, 2}, std::vector<double>{1, 0.5, 3});
    CHECK(noisy.slope == doctest::Approx(1.0));
    CHECK(noisy.intercept == doctest::Approx(0.5));
    CHECK(noisy.r_squared == doctest::Approx(2.0 / 3.5));

    CHECK(linear_regression(x, std::vector<double>(5, 2.0)).r_squared == 0.0);
    CHECK_THROWS_AS(linear_regression(std::vector<double>(5, 1.0), y), StatsError);
    CHECK_THROWS_AS(linear_regression(std::vector<double>{1, 2}, std::vector<double>{1, 2}), StatsError);
  }

  TEST_CASE("logistic fit solves the score equations") {
    Rng rng(3);
    std::vector<double> x(2000);
    std::vector<bool> y(2000);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.uniform() * 4.0 - 2.0;
      y[i] = rng.uniform() < 1.0 / (1.0 + std::exp(-(0.3 + 1.5 * x[i])));
    }
    const auto fit = logistic_regression(x, y);
    CHECK(fit.converged);
    CHECK_FALSE(fit.separated);
    double g0 = 0.0, g1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double p = 1.0 / (1.0 + std::exp(-(fit.intercept + fit.coefficient * x[i])));
      g0 += (y[i] ? 1.0 : 0.0) - p;
      g1 += ((y[i] ? 1.0 : 0.0) - p) * x[i];
    }
    CHECK(std::abs(g0) < 1e-6);
    CHECK(std::abs(g1) < 1e-6);
    CHECK(std::abs(fit.coefficient - 1.5) < 3.0 * fit.coefficient_se);
    CHECK(fit.pseudo_r_squared > 0.0);
    CHECK(fit.pseudo_r_squared < 1.0);
  }

  TEST_CASE("logistic fit flags separation and bad input") {
    std::vector<double> x;
    std::vector<bool> y;
    for (int i = 0; i < 20; ++i) {
      x.push_back(i);
      y.push_back(i >= 10);
    }
    CHECK(logistic_regression(x, y).separated);
    CHECK_THROWS_AS(logistic_regression(x, std::vector<bool>(20, true)), StatsError);
    CHECK_THROWS_AS(logistic_regression(std::vector<double>{1, 2, 3}, std::vector<bool>{true, false, true}),
                    StatsError);
  }
}
