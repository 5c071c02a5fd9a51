#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "bugnav/rng.hpp"

namespace bugnav {

class StatsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two-sided test on the difference of means. Resamples both groups with
/// replacement from the pooled data (the null of one common distribution)
/// and reports (1 + #{|resampled diff| >= |observed diff|}) / (1 + n).
double bootstrap_test(std::span<const double> a, std::span<const double> b, int n_resamples, Rng& rng);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares. R^2 is 0 when y has no variance.
LinearFit linear_regression(std::span<const double> x, std::span<const double> y);

struct LogisticFit {
  double coefficient = 0.0;
  double intercept = 0.0;
  double coefficient_se = 0.0;
  double pseudo_r_squared = 0.0;  // McFadden
  int iterations = 0;
  bool converged = false;
  bool separated = false;  // a threshold on x splits the classes perfectly
};

/// Maximum likelihood by iteratively reweighted least squares.
LogisticFit logistic_regression(std::span<const double> x, const std::vector<bool>& success);

/// Quantile by linear interpolation between order statistics.
double quantile(std::span<const double> values, double q);
double mean(std::span<const double> values);

}  // namespace bugnav
