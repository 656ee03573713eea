#include "dcov/datagen.hpp"

#include <cmath>
#include <numbers>

#include "dcov/errors.hpp"
#include "dcov/random.hpp"

namespace dcov {

Shape parse_shape(const std::string& tag) {
  if (tag == "circle") return Shape::circle;
  if (tag == "wave") return Shape::wave;
  if (tag == "cross") return Shape::cross;
  if (tag == "linear") return Shape::linear;
  if (tag == "independent") return Shape::independent;
  throw DomainError("unknown shape '" + tag + "'");
}

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::circle:
      return "circle";
    case Shape::wave:
      return "wave";
    case Shape::cross:
      return "cross";
    case Shape::linear:
      return "linear";
    case Shape::independent:
      return "independent";
  }
  return "unknown";
}

PairedSample generate(const ShapeSpec& spec) {
  if (spec.n == 0) throw DomainError("generate: n must be >= 1");
  if (!(spec.noise_sd >= 0.0)) throw DomainError("generate: noise_sd must be >= 0");
  constexpr double kPi = std::numbers::pi;
  Engine engine = make_engine(spec.seed, 0);
  const std::size_t n = spec.n;

  if (spec.shape == Shape::independent) {
    if (spec.p == 0 || spec.q == 0) throw DomainError("generate: dimensions must be >= 1");
    Matrix x(n, spec.p), y(n, spec.q);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : x.row(i)) v = standard_normal(engine);
      for (auto& v : y.row(i)) v = standard_normal(engine);
    }
    return PairedSample(std::move(x), std::move(y));
  }

  if (spec.shape == Shape::linear && !(std::fabs(spec.rho) <= 1.0)) {
    throw DomainError("generate: rho must lie in [-1, 1]");
  }

  Matrix x(n, 1), y(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    double a = 0.0, b = 0.0;
    switch (spec.shape) {
      case Shape::circle: {
        const double theta = 2.0 * kPi * uniform_open(engine);
        a = std::cos(theta);
        b = std::sin(theta);
        break;
      }
      case Shape::wave: {
        const double u = uniform_open(engine);
        a = u;
        b = std::cos(4.0 * kPi * u);
        break;
      }
      case Shape::cross: {
        const double v = uniform_open(engine);
        const double s = uniform_open(engine) < 0.5 ? -1.0 : 1.0;
        const double t = uniform_open(engine) < 0.5 ? -1.0 : 1.0;
        a = s * v;
        b = t * v;
        break;
      }
      case Shape::linear: {
        const double u = standard_normal(engine);
        const double w = standard_normal(engine);
        a = u;
        b = spec.rho * u + std::sqrt(1.0 - spec.rho * spec.rho) * w;
        break;
      }
      case Shape::independent:
        break;
    }
    if (spec.shape != Shape::linear && spec.noise_sd > 0.0) {
      a += spec.noise_sd * standard_normal(engine);
      b += spec.noise_sd * standard_normal(engine);
    }
    x(i, 0) = a;
    y(i, 0) = b;
  }
  return PairedSample(std::move(x), std::move(y));
}

}  // namespace dcov
