#include "bugnav/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace bugnav {

double mean(std::span<const double> values) {
  if (values.empty()) throw StatsError("mean of empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw StatsError("quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw StatsError("quantile level outside [0, 1]");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0 || std::isinf(v[lo]) || std::isinf(v[hi])) return frac < 0.5 ? v[lo] : v[hi];
  return v[lo] + frac * (v[hi] - v[lo]);
}

double bootstrap_test(std::span<const double> a, std::span<const double> b, int n_resamples, Rng& rng) {
  if (a.size() < 2 || b.size() < 2) throw StatsError("bootstrap needs at least two values per group");
  if (n_resamples < 1) throw StatsError("bootstrap needs at least one resample");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const double observed = std::abs(mean(a) - mean(b));
  double scale = 0.0;
  for (double v : pooled) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * std::max(1.0, scale);

  int extreme = 0;
  for (int r = 0; r < n_resamples; ++r) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sa += pooled[rng.index(pooled.size())];
    for (std::size_t i = 0; i < b.size(); ++i) sb += pooled[rng.index(pooled.size())];
    const double diff = std::abs(sa / static_cast<double>(a.size()) - sb / static_cast<double>(b.size()));
    if (diff >= observed - tol) ++extreme;
  }
  return (extreme + 1.0) / (n_resamples + 1.0);
}

LinearFit linear_regression(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StatsError("x and y differ in length");
  if (x.size() < 3) throw StatsError("linear regression needs at least three points");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw StatsError("x is constant");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (fit.intercept + fit.slope * x[i]);
      ss_res += e * e;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

namespace {

double log_likelihood(std::span<const double> x, const std::vector<bool>& y, double b0, double b1) {
  double ll = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double eta = b0 + b1 * x[i];
    // log(sigmoid(eta)) and log(1 - sigmoid(eta)) without overflow
    const double log_p = -std::log1p(std::exp(-std::abs(eta))) + std::min(eta, 0.0);
    const double log_q = log_p - eta;
    ll += y[i] ? log_p : log_q;
  }
  return ll;
}

bool perfectly_separated(std::span<const double> x, const std::vector<bool>& y) {
  double min1 = std::numeric_limits<double>::infinity(), max1 = -min1;
  double min0 = min1, max0 = -min1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i]) {
      min1 = std::min(min1, x[i]);
      max1 = std::max(max1, x[i]);
    } else {
      min0 = std::min(min0, x[i]);
      max0 = std::max(max0, x[i]);
    }
  }
  return max0 < min1 || max1 < min0;
}

}  // namespace

LogisticFit logistic_regression(std::span<const double> x, const std::vector<bool>& success) {
  if (x.size() != success.size()) throw StatsError("x and outcomes differ in length");
  if (x.size() < 10) throw StatsError("logistic regression needs at least ten points");
  const auto n_success = std::count(success.begin(), success.end(), true);
  if (n_success == 0 || n_success == static_cast<long>(success.size()))
    throw StatsError("logistic regression needs both outcome classes");

  const double n = static_cast<double>(x.size());
  const double p_bar = static_cast<double>(n_success) / n;
  const double ll_null = n * (p_bar * std::log(p_bar) + (1.0 - p_bar) * std::log(1.0 - p_bar));

  LogisticFit fit;
  fit.separated = perfectly_separated(x, success);
  double b0 = 0.0, b1 = 0.0;
  double ll = log_likelihood(x, success, b0, b1);
  double h00 = 0.0, h01 = 0.0, h11 = 0.0;
  for (int it = 1; it <= 100; ++it) {
    // Newton step: solve (X'WX) delta = X'(y - p)
    double g0 = 0.0, g1 = 0.0;
    h00 = h01 = h11 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double p = 1.0 / (1.0 + std::exp(-(b0 + b1 * x[i])));
      const double w = std::max(p * (1.0 - p), 1e-12);
      const double r = (success[i] ? 1.0 : 0.0) - p;
      g0 += r;
      g1 += r * x[i];
      h00 += w;
      h01 += w * x[i];
      h11 += w * x[i] * x[i];
    }
    const double det = h00 * h11 - h01 * h01;
    if (!(det > 0.0)) break;
    b0 += (h11 * g0 - h01 * g1) / det;
    b1 += (h00 * g1 - h01 * g0) / det;
    const double ll_new = log_likelihood(x, success, b0, b1);
    fit.iterations = it;
    const bool done = std::abs(ll_new - ll) < 1e-8;
    ll = ll_new;
    if (done) {
      fit.converged = true;
      break;
    }
  }
  // Standard error from the information matrix at the final estimate.
  h00 = h01 = h11 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double p = 1.0 / (1.0 + std::exp(-(b0 + b1 * x[i])));
    const double w = p * (1.0 - p);
    h00 += w;
    h01 += w * x[i];
    h11 += w * x[i] * x[i];
  }
  const double det = h00 * h11 - h01 * h01;
  fit.coefficient_se = det > 0.0 ? std::sqrt(h00 / det) : std::numeric_limits<double>::infinity();
  fit.coefficient = b1;
  fit.intercept = b0;
  fit.pseudo_r_squared = 1.0 - ll / ll_null;
  return fit;
}

}  // namespace bugnav
