#include "dcov/fundamental.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dcov/errors.hpp"
#include "dcov/parallel.hpp"
#include "dcov/quadrature.hpp"
#include "dcov/random.hpp"

namespace dcov {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 4096;
constexpr std::size_t kCfChunk = 256;

// pi^e / Gamma(g) without overflow.
double pi_power_over_gamma(double e, double g) {
  const double gamma = std::tgamma(g);
  if (std::isfinite(gamma) && gamma > 0.0) {
    const double num = std::pow(kPi, e);
    if (std::isfinite(num)) return num / gamma;
  }
  return std::exp(e * std::log(kPi) - std::lgamma(g));
}

// 1 - cos(u) without cancellation near 0.
double one_minus_cos(double u) noexcept {
  const double s = std::sin(0.5 * u);
  return 2.0 * s * s;
}

struct RadialDraw {
  double radius;
  // 1 / (|t|^{d+1} g(t)) for the proposal density g.
  double weight_factor;
};

// Fills `out` with a draw from the density g(t) = h(|t|) / (|S^{d-1}| |t|^{d-1}),
// h(r) = 2 / (pi (1 + r^2)). In one dimension this is the standard Cauchy.
RadialDraw draw_radial(Engine& engine, std::span<double> out, double sphere_area) {
  const std::size_t d = out.size();
  if (d == 1) {
    out[0] = uniform_open(engine) < 0.5 ? -1.0 : 1.0;
  } else {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& v : out) {
        v = standard_normal(engine);
        norm += v * v;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& v : out) v /= norm;
  }
  const double r = std::tan(0.5 * kPi * uniform_open(engine));
  for (auto& v : out) v *= r;
  return {r, sphere_area * 0.5 * kPi * (1.0 + r * r) / (r * r)};
}

struct ChunkMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

std::pair<double, double> mean_and_se(const std::vector<ChunkMoments>& chunks, std::size_t total) {
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& c : chunks) {
    sum += c.sum;
    sum_sq += c.sum_sq;
  }
  const double n = static_cast<double>(total);
  const double mean = sum / n;
  double var = total > 1 ? (sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
  if (var < 0.0) var = 0.0;
  return {mean, std::sqrt(var / n)};
}

IntegralCheck quadrature_check(double a, double tolerance) {
  IntegralCheck check;
  if (a == 0.0) return check;

  // Remainder after the exact 1/t^2 tail is at most 4 / (a T^2); keep it at tol/10.
  const double period = kPi / a;
  const double t_min = std::sqrt(40.0 / (a * tolerance));
  const auto panels = static_cast<std::size_t>(std::ceil(t_min / period));
  const double cutoff = static_cast<double>(panels) * period;
  const double panel_tol = 0.4 * tolerance / static_cast<double>(panels);

  const auto integrand = [a](double t) {
    if (t == 0.0) return 0.5 * a * a;
    return one_minus_cos(a * t) / (t * t);
  };
  double half = 0.0;
  double err = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const auto r = integrate_adaptive(integrand, static_cast<double>(k) * period,
                                      static_cast<double>(k + 1) * period, panel_tol);
    half += r.value;
    err += r.error;
  }
  check.numeric_estimate = 2.0 * half + 2.0 / cutoff;
  check.error_bound = 2.0 * err + 4.0 / (a * cutoff * cutoff);
  return check;
}

IntegralCheck monte_carlo_check(std::span<const double> x, std::size_t samples, std::uint64_t seed,
                                unsigned threads) {
  const std::size_t p = x.size();
  const double area = unit_sphere_area(p);
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<ChunkMoments> moments(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Engine engine = make_engine(seed, c);
    std::vector<double> t(p);
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(samples, begin + kChunk);
    ChunkMoments m;
    for (std::size_t s = begin; s < end; ++s) {
      const RadialDraw draw = draw_radial(engine, t, area);
      double dot = 0.0;
      for (std::size_t k = 0; k < p; ++k) dot += t[k] * x[k];
      const double w = one_minus_cos(dot) * draw.weight_factor;
      m.sum += w;
      m.sum_sq += w * w;
    }
    moments[c] = m;
  });
  const auto [mean, se] = mean_and_se(moments, samples);
  IntegralCheck check;
  check.numeric_estimate = mean;
  check.standard_error = se;
  check.sample_count = samples;
  return check;
}

}  // namespace

double fundamental_constant(int p) {
  if (p < 1) throw DomainError("fundamental_constant: p must be >= 1, got " + std::to_string(p));
  const double h = 0.5 * (p + 1);
  return pi_power_over_gamma(h, h);
}

double generalized_constant(const GeneralizedConstant& spec) {
  const int p = spec.dimension;
  const int m = spec.truncation_order;
  const double alpha = spec.exponent;
  if (p < 1) throw DomainError("generalized_constant: dimension must be >= 1");
  if (m < 1) throw DomainError("generalized_constant: truncation order must be >= 1");
  if (!(alpha > 2.0 * (m - 1)) || !(alpha < 2.0 * m)) {
    throw DomainError("generalized_constant: exponent " + std::to_string(alpha) +
                      " outside the convergence band (" + std::to_string(2 * (m - 1)) + ", " +
                      std::to_string(2 * m) + ")");
  }
  const double half_alpha = 0.5 * alpha;
  if (half_alpha == std::floor(half_alpha)) {
    throw DomainError("generalized_constant: Gamma(1 - alpha/2) has a pole at alpha = " +
                      std::to_string(alpha));
  }
  const double gamma_num = std::tgamma(1.0 - half_alpha);
  return 2.0 * gamma_num * pi_power_over_gamma(0.5 * p, 0.5 * (p + alpha)) /
         (alpha * std::pow(2.0, alpha));
}

double truncated_cos(int m, double v) {
  if (m < 1) throw DomainError("truncated_cos: m must be >= 1");
  const double v2 = v * v;
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < m; ++j) {
    term *= -v2 / ((2.0 * j - 1.0) * (2.0 * j));
    sum += term;
  }
  return sum;
}

double unit_sphere_area(std::size_t d) {
  const double h = 0.5 * static_cast<double>(d);
  return 2.0 * pi_power_over_gamma(h, h);
}

IntegralCheck verify_fundamental_integral(std::span<const double> x, const IntegralBudget& budget,
                                          std::uint64_t seed, unsigned threads) {
  const std::size_t p = x.size();
  if (p == 0) throw DomainError("verify_fundamental_integral: empty argument");
  for (double v : x) {
    if (!std::isfinite(v)) throw DataError("verify_fundamental_integral: non-finite argument");
  }
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);

  IntegralCheck check;
  if (p == 1) {
    if (!(budget.tolerance > 0.0)) {
      throw DomainError("verify_fundamental_integral: tolerance must be positive");
    }
    check = quadrature_check(norm, budget.tolerance);
  } else {
    if (budget.samples == 0) {
      throw DomainError("verify_fundamental_integral: sample budget must be positive");
    }
    check = monte_carlo_check(x, budget.samples, seed, threads);
  }
  check.dimension = p;
  check.argument.assign(x.begin(), x.end());
  check.closed_form = fundamental_constant(static_cast<int>(p)) * norm;
  return check;
}

DCovEstimate dcov_sq_cf_mc(const PairedSample& sample, std::size_t mc_samples, std::uint64_t seed,
                           unsigned threads) {
  const std::size_t n = sample.n();
  if (n < 2) throw SampleSizeError("dcov_sq_cf_mc", 2, n);
  if (mc_samples == 0) throw DomainError("dcov_sq_cf_mc: mc_samples must be positive");
  const std::size_t p = sample.p();
  const std::size_t q = sample.q();
  const double area_p = unit_sphere_area(p);
  const double area_q = unit_sphere_area(q);
  const double norm = fundamental_constant(static_cast<int>(p)) *
                      fundamental_constant(static_cast<int>(q));
  const double inv_n = 1.0 / static_cast<double>(n);

  const std::size_t chunks = (mc_samples + kCfChunk - 1) / kCfChunk;
  std::vector<ChunkMoments> moments(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Engine engine = make_engine(seed, c);
    std::vector<double> s(p), t(q);
    const std::size_t begin = c * kCfChunk;
    const std::size_t end = std::min(mc_samples, begin + kCfChunk);
    ChunkMoments m;
    for (std::size_t draw = begin; draw < end; ++draw) {
      const RadialDraw ds = draw_radial(engine, s, area_p);
      const RadialDraw dt = draw_radial(engine, t, area_q);
      // Running sums of the empirical characteristic functions.
      double jr = 0.0, ji = 0.0, xr = 0.0, xi = 0.0, yr = 0.0, yi = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double a = 0.0, b = 0.0;
        const auto xk = sample.x().row(k);
        const auto yk = sample.y().row(k);
        for (std::size_t d = 0; d < p; ++d) a += s[d] * xk[d];
        for (std::size_t d = 0; d < q; ++d) b += t[d] * yk[d];
        const double ca = std::cos(a), sa = std::sin(a);
        const double cb = std::cos(b), sb = std::sin(b);
        xr += ca;
        xi += sa;
        yr += cb;
        yi += sb;
        jr += ca * cb - sa * sb;
        ji += sa * cb + ca * sb;
      }
      jr *= inv_n;
      ji *= inv_n;
      xr *= inv_n;
      xi *= inv_n;
      yr *= inv_n;
      yi *= inv_n;
      const double dr = jr - (xr * yr - xi * yi);
      const double di = ji - (xr * yi + xi * yr);
      const double w = (dr * dr + di * di) * ds.weight_factor * dt.weight_factor / norm;
      m.sum += w;
      m.sum_sq += w * w;
    }
    moments[c] = m;
  });
  const auto [mean, se] = mean_and_se(moments, mc_samples);
  return {mean, EstimatorKind::cf_mc, n, p, q, se};
}

}  // namespace dcov
