#include "dcov/inference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dcov/distances.hpp"
#include "dcov/errors.hpp"
#include "dcov/estimators.hpp"
#include "dcov/parallel.hpp"
#include "dcov/random.hpp"
#include "dcov/ustat_theory.hpp"

namespace dcov {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// O(n^2) unbiased estimator under a relabeling of Y. The X matrix, the Y
// matrix and their row sums are shared; only indices move.
class PermutedFastDcov {
 public:
  PermutedFastDcov(const PairedSample& sample)
      : dx_(pairwise_distances(sample.x())), dy_(pairwise_distances(sample.y())) {}

  double operator()(std::span<const std::size_t> perm) const {
    const std::size_t n = dx_.n();
    std::vector<std::uint32_t> pi(perm.begin(), perm.end());
    double cross = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double* a = dx_.row(i).data();
      const double* b = dy_.row(pi[i]).data();
      // The next permuted row sits at a random place in memory; fetch it early.
      const char* next = reinterpret_cast<const char*>(dy_.row(pi[i + 1]).data());
      for (std::size_t off = 0; off < n * sizeof(double); off += 64) __builtin_prefetch(next + off);
      // Independent accumulators break the add dependency chain; the
      // summation order is fixed, so results do not depend on threading.
      double acc[4] = {0.0, 0.0, 0.0, 0.0};
      std::size_t j = i + 1;
      for (; j + 4 <= n; j += 4) {
        acc[0] += a[j] * b[pi[j]];
        acc[1] += a[j + 1] * b[pi[j + 1]];
        acc[2] += a[j + 2] * b[pi[j + 2]];
        acc[3] += a[j + 3] * b[pi[j + 3]];
      }
      for (; j < n; ++j) acc[0] += a[j] * b[pi[j]];
      cross += (acc[0] + acc[1]) + (acc[2] + acc[3]);
    }
    const auto ra = dx_.row_sums();
    const auto rb = dy_.row_sums();
    double rp = 0.0;
    for (std::size_t i = 0; i < n; ++i) rp += ra[i] * rb[pi[i]];
    return fast_value({n, 2.0 * cross, dx_.grand_sum(), dy_.grand_sum(), rp});
  }

 private:
  DistanceMatrix dx_;
  DistanceMatrix dy_;
};

class PermutedNaiveDcov {
 public:
  PermutedNaiveDcov(const PairedSample& sample)
      : dx_(pairwise_distances(sample.x())), dy_(pairwise_distances(sample.y())) {}

  double operator()(std::span<const std::size_t> perm) const {
    return dcov_usq_naive(dx_, dy_.permuted(perm)).value;
  }

 private:
  DistanceMatrix dx_;
  DistanceMatrix dy_;
};

class PermutedClassicalCov {
 public:
  PermutedClassicalCov(const PairedSample& sample)
      : n_(sample.n()), p_(sample.p()), q_(sample.q()), xc_(sample.x()), yc_(sample.y()) {
    center(xc_);
    center(yc_);
  }

  double operator()(std::span<const std::size_t> perm) const {
    std::vector<double> cov(p_ * q_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto xr = xc_.row(i);
      const auto yr = yc_.row(perm[i]);
      for (std::size_t a = 0; a < p_; ++a) {
        for (std::size_t b = 0; b < q_; ++b) cov[a * q_ + b] += xr[a] * yr[b];
      }
    }
    double frob = 0.0;
    for (double c : cov) {
      const double v = c / static_cast<double>(n_ - 1);
      frob += v * v;
    }
    return frob;
  }

 private:
  static void center(Matrix& m) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      double s = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, c);
      const double mu = s / static_cast<double>(m.rows());
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) -= mu;
    }
  }

  std::size_t n_, p_, q_;
  Matrix xc_;
  Matrix yc_;
};

template <typename Statistic>
void run_permutations(const Statistic& stat, std::size_t n, std::size_t B, std::uint64_t seed,
                      unsigned threads, TestReport& report) {
  std::vector<std::size_t> identity(n);
  for (std::size_t i = 0; i < n; ++i) identity[i] = i;
  report.observed = stat(identity);

  std::vector<double> permuted(B);
  parallel_for(B, threads, [&](std::size_t b) {
    Engine engine = make_engine(seed, b + 1);
    const auto perm = random_permutation(n, engine);
    permuted[b] = stat(perm);
  });
  // Relabelings that leave the statistic unchanged can come out a few ulps
  // below the observed value through a different summation order; they are
  // ties and count against the observed value.
  double scale = std::fabs(report.observed);
  for (double v : permuted) scale = std::max(scale, std::fabs(v));
  report.p_value = upper_tail_p_value(report.observed - 1e-12 * scale, permuted);
}

}  // namespace

StatisticKind parse_statistic(const std::string& tag) {
  if (tag == "dcov-fast") return StatisticKind::dcov_fast;
  if (tag == "dcov-naive") return StatisticKind::dcov_naive;
  if (tag == "classical-cov") return StatisticKind::classical_cov;
  throw DomainError("unknown statistic '" + tag + "'");
}

std::string to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::dcov_fast:
      return "dcov-fast";
    case StatisticKind::dcov_naive:
      return "dcov-naive";
    case StatisticKind::classical_cov:
      return "classical-cov";
  }
  return "unknown";
}

std::string to_string(TestMethod method) {
  return method == TestMethod::permutation ? "permutation" : "asymptotic";
}

double upper_tail_p_value(double observed, std::span<const double> reference) {
  std::size_t exceed = 0;
  for (double v : reference) {
    if (v >= observed) ++exceed;
  }
  return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(reference.size()) + 1.0);
}

TestReport permutation_test(const PairedSample& sample, StatisticKind statistic, std::size_t B,
                            std::uint64_t seed, unsigned threads) {
  const auto start = Clock::now();
  if (B == 0) throw DomainError("permutation_test: B must be >= 1");
  const std::size_t n = sample.n();
  TestReport report;
  report.statistic = statistic;
  report.method = TestMethod::permutation;
  report.replicates = B;
  report.seed = seed;
  report.n = n;
  report.p = sample.p();
  report.q = sample.q();

  switch (statistic) {
    case StatisticKind::dcov_fast:
      if (n < 4) throw SampleSizeError("permutation_test(dcov-fast)", 4, n);
      run_permutations(PermutedFastDcov(sample), n, B, seed, threads, report);
      break;
    case StatisticKind::dcov_naive:
      if (n < 4) throw SampleSizeError("permutation_test(dcov-naive)", 4, n);
      run_permutations(PermutedNaiveDcov(sample), n, B, seed, threads, report);
      break;
    case StatisticKind::classical_cov:
      if (n < 2) throw SampleSizeError("permutation_test(classical-cov)", 2, n);
      run_permutations(PermutedClassicalCov(sample), n, B, seed, threads, report);
      break;
  }
  report.runtime_ms = elapsed_ms(start);
  return report;
}

TestReport asymptotic_test(const PairedSample& sample, std::size_t basis_size,
                           std::size_t mixture_reps, std::uint64_t seed, unsigned threads) {
  const auto start = Clock::now();
  const std::size_t n = sample.n();
  const std::size_t required = std::max<std::size_t>(20, basis_size);
  if (n < required) throw SampleSizeError("asymptotic_test", required, n);
  if (mixture_reps == 0) throw DomainError("asymptotic_test: mixture_reps must be >= 1");

  TestReport report;
  report.statistic = StatisticKind::dcov_fast;
  report.method = TestMethod::asymptotic;
  report.replicates = mixture_reps;
  report.seed = seed;
  report.n = n;
  report.p = sample.p();
  report.q = sample.q();
  report.observed = static_cast<double>(n) * dcov_usq_fast(sample).value;

  Engine engine = make_engine(seed, 1);
  const auto perm = random_permutation(n, engine);
  const auto spectrum =
      h2_spectrum(sample.with_permuted_y(perm), basis_size, derive_seed(seed, 2), threads);
  const auto draws = sample_degenerate_limit(spectrum, mixture_reps, derive_seed(seed, 3), threads);
  report.p_value = upper_tail_p_value(report.observed, draws);
  report.runtime_ms = elapsed_ms(start);
  return report;
}

}  // namespace dcov
