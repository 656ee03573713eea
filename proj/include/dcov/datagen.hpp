#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "dcov/types.hpp"

namespace dcov {

enum class Shape { circle, wave, cross, linear, independent };

Shape parse_shape(const std::string& tag);
std::string to_string(Shape shape);

struct ShapeSpec {
  Shape shape = Shape::independent;
  std::size_t n = 100;
  double noise_sd = 0.0;
  std::uint64_t seed = 42;
  /// Correlation of the linear shape.
  double rho = 0.5;
  /// Block dimensions of the independent shape; the others are bivariate.
  std::size_t p = 1;
  std::size_t q = 1;
};

/// Seeded synthetic sample. Gaussian noise of sd noise_sd is added to both
/// coordinates of the circle, wave and cross shapes.
///   circle       (cos T, sin T),            T ~ U[0, 2 pi)
///   wave         (U, cos(4 pi U)),          U ~ U[0, 1]
///   cross        (S V, S' V),               V ~ U[0, 1], S, S' random signs
///   linear       (U, rho U + sqrt(1 - rho^2) U'), U, U' ~ N(0, 1)
///   independent  X ~ N(0, I_p), Y ~ N(0, I_q) independently
/// circle, wave and cross have zero covariance but strong dependence.
PairedSample generate(const ShapeSpec& spec);

}  // namespace dcov
