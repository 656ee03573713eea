#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dcov/types.hpp"

namespace dcov {

/// c_p = pi^{(p+1)/2} / Gamma((p+1)/2), the constant in
///   integral over R^p of (1 - cos<t,x>) / |t|^{p+1} dt = c_p |x|.
/// Throws DomainError for p < 1.
double fundamental_constant(int p);

/// Parameters of the generalized integral
///   integral over R^p of (cos_m(<t,x>) - cos(<t,x>)) / |t|^{p+alpha} dt.
/// Real alpha only; converges absolutely for 2(m-1) < alpha < 2m.
struct GeneralizedConstant {
  int dimension = 1;
  double exponent = 1.0;
  int truncation_order = 1;
};

/// 2 pi^{p/2} Gamma(1 - alpha/2) / (alpha 2^alpha Gamma((p + alpha)/2)),
/// the factor multiplying |x|^alpha. Negative for m >= 2.
double generalized_constant(const GeneralizedConstant& spec);

/// Maclaurin polynomial of cos through degree 2(m-1).
double truncated_cos(int m, double v);

/// Surface area of the unit sphere in R^d.
double unit_sphere_area(std::size_t d);

struct IntegralBudget {
  /// Absolute tolerance for the 1-D quadrature.
  double tolerance = 1e-9;
  /// Monte Carlo draws for p >= 2.
  std::size_t samples = 1'000'000;
};

/// Numerical value of the fundamental integral next to its closed form.
struct IntegralCheck {
  std::size_t dimension = 0;
  std::vector<double> argument;
  double numeric_estimate = 0.0;
  double closed_form = 0.0;
  /// Monte Carlo standard error; 0 for quadrature.
  double standard_error = 0.0;
  /// 0 means the estimate came from quadrature.
  std::size_t sample_count = 0;
  /// Quadrature error estimate plus the truncated-tail bound; 0 for Monte Carlo.
  double error_bound = 0.0;
};

/// p = 1: adaptive quadrature on [0, T] with the 1/t^2 part of the tail added
/// exactly and the oscillating remainder bounded by 4 / (|x| T^2).
/// p >= 2: importance sampling with a spherically symmetric proposal
/// (uniform direction, half-Cauchy radius), which keeps the weights bounded.
IntegralCheck verify_fundamental_integral(std::span<const double> x, const IntegralBudget& budget,
                                          std::uint64_t seed, unsigned threads = 1);

/// Monte Carlo estimate of the characteristic-function form of V^2 with the
/// empirical characteristic functions of the sample plugged in. Converges to
/// the V-statistic, not the unbiased estimate.
DCovEstimate dcov_sq_cf_mc(const PairedSample& sample, std::size_t mc_samples, std::uint64_t seed,
                           unsigned threads = 1);

}  // namespace dcov
