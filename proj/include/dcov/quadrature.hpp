#pragma once

#include <cstddef>
#include <functional>

namespace dcov {

struct QuadratureResult {
  double value = 0.0;
  /// Sum of |Kronrod - Gauss| over accepted subintervals.
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive 7-point Gauss / 15-point Kronrod quadrature on [a, b]. Bisects
/// until each piece meets its share of `tolerance` or `max_depth` is reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tolerance, int max_depth = 40);

}  // namespace dcov
