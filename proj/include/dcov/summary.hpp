#pragma once

#include <span>
#include <vector>

namespace dcov {

double mean(std::span<const double> values);
/// Unbiased sample variance.
double variance(std::span<const double> values);
/// Standard error of the mean.
double standard_error(std::span<const double> values);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(std::span<const double> a, std::span<const double> b);

/// Type-7 (linear interpolation) quantile of already sorted values.
double quantile_sorted(std::span<const double> sorted, double prob);

}  // namespace dcov
