#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "citegraph/series.hpp"

namespace citegraph {

// Exponential growth diagnostic fitted by ordinary least squares on
// (year, ln value). Log-space OLS is deterministic and entirely adequate
// for trend inspection; no nonlinear solver involved.
struct GrowthFit {
  double rate = 0.0;           // fractional growth per year, e^slope - 1
  double log_intercept = 0.0;  // fitted ln value at year 0
  double r_squared = 0.0;
  int years_used = 0;
  int years_skipped = 0;       // in-range years that were missing or <= 0
  bool degenerate = false;     // zero variance in ln value; r_squared = 1 by convention
};

inline GrowthFit fit_exponential(const AnnualSeries& series, int from_year, int to_year) {
  std::vector<double> xs;
  std::vector<double> ys;
  int skipped = 0;
  for (const auto& [year, entry] : series) {
    if (year < from_year || year > to_year) continue;
    if (!entry.value || *entry.value <= 0.0) {
      ++skipped;
      continue;
    }
    xs.push_back(static_cast<double>(year));
    ys.push_back(std::log(*entry.value));
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("fit_exponential: need at least 2 positive values in [" +
                                std::to_string(from_year) + "," + std::to_string(to_year) + "], got " +
                                std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / n;

  GrowthFit fit;
  fit.years_used = static_cast<int>(xs.size());
  fit.years_skipped = skipped;
  // A flat series has zero residual and zero variance at once; call it a
  // perfect fit of rate 0 rather than dividing noise by noise.
  if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); })) {
    fit.rate = 0.0;
    fit.log_intercept = ys.front();
    fit.degenerate = true;
    fit.r_squared = 1.0;
    return fit;
  }

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  // sxx > 0 always: a series holds at most one entry per year.
  const double slope = sxy / sxx;
  fit.rate = std::expm1(slope);
  fit.log_intercept = mean_y - slope * mean_x;
  if (syy == 0.0) {
    fit.degenerate = true;
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double resid = ys[i] - (fit.log_intercept + slope * xs[i]);
      ss_res += resid * resid;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

namespace detail {

inline std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace detail

// Spearman rank correlation with average ranks on ties, computed as the
// Pearson correlation of the rank vectors.
inline double spearman_rho(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("spearman_rho: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("spearman_rho: need at least 2 points");
  const auto rx = detail::average_ranks(xs);
  const auto ry = detail::average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;  // a constant vector carries no order information
  return sxy / std::sqrt(sxx * syy);
}

// Large-sample z statistic for rho != 0; |z| above ~1.96 rejects "no
// monotone trend" at the 5% level.
inline double spearman_trend_z(double rho, std::size_t n) {
  if (n < 2) throw std::invalid_argument("spearman_trend_z: need at least 2 points");
  return rho * std::sqrt(static_cast<double>(n - 1));
}

}  // namespace citegraph
