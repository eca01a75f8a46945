#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace datakit::testing {

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against `cdf`.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Kolmogorov-Smirnov statistic of integer draws against the discrete
/// uniform distribution on {lo, lo + step, ..., hi}. Both CDFs are step
/// functions jumping at the same points, so comparing at each support point
/// gives the supremum.
inline double discrete_ks_statistic(const std::vector<double>& draws, int lo, int hi, int step = 1) {
  const int cells = (hi - lo) / step + 1;
  std::vector<double> counts(static_cast<std::size_t>(cells), 0.0);
  for (double d : draws) counts[static_cast<std::size_t>((static_cast<int>(d) - lo) / step)] += 1.0;
  double cum = 0.0, dmax = 0.0;
  for (int i = 0; i < cells; ++i) {
    cum += counts[static_cast<std::size_t>(i)];
    dmax = std::max(dmax, std::abs(cum / static_cast<double>(draws.size()) - (i + 1.0) / cells));
  }
  return dmax;
}

/// Asymptotic critical value at alpha = 0.01.
inline double ks_critical_001(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

inline std::function<double(double)> uniform_cdf(double lo, double hi) {
  return [lo, hi](double x) { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); };
}

/// Upper-tail p-value of Pearson's chi-square test.
inline double chi_square_p(const std::vector<double>& observed, const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace datakit::testing
