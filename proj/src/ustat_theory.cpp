#include "dcov/ustat_theory.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "dcov/errors.hpp"
#include "dcov/parallel.hpp"
#include "dcov/random.hpp"

namespace dcov {
namespace {

constexpr std::size_t kDrawChunk = 1024;

double choose(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    r *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return r;
}

void check_dims(Observation point, const PairedSample& sample, const char* what) {
  if (point.x.size() != sample.p() || point.y.size() != sample.q()) {
    throw DomainError(std::string(what) + ": point dimensions do not match the sample");
  }
}

std::vector<double> distances_to(std::span<const double> point, const Matrix& block) {
  std::vector<double> d(block.rows());
  for (std::size_t j = 0; j < block.rows(); ++j) d[j] = euclidean_distance(point, block.row(j));
  return d;
}

double sum_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Kernel on (point, a, b, c) with the point's distances given separately.
double kernel_with_point(const DistanceMatrix& dx, const DistanceMatrix& dy,
                         const std::vector<double>& pa, const std::vector<double>& pb,
                         std::size_t a, std::size_t b, std::size_t c) {
  QuadDistances x{}, y{};
  const std::size_t idx[3] = {a, b, c};
  for (int u = 0; u < 3; ++u) {
    x[0][u + 1] = x[u + 1][0] = pa[idx[u]];
    y[0][u + 1] = y[u + 1][0] = pb[idx[u]];
    for (int v = u + 1; v < 3; ++v) {
      x[u + 1][v + 1] = x[v + 1][u + 1] = dx(idx[u], idx[v]);
      y[u + 1][v + 1] = y[v + 1][u + 1] = dy(idx[u], idx[v]);
    }
  }
  return kernel_h(x, y);
}

}  // namespace

H1Estimate h1_hat(Observation point, const PairedSample& sample, const H1Options& options) {
  const std::size_t n = sample.n();
  if (n < 3) throw SampleSizeError("h1_hat", 3, n);
  check_dims(point, sample, "h1_hat");

  if (options.mode == H1Mode::algebraic) {
    const ProjectionReference ref(sample);
    return {ref.h1(point), 0.0, static_cast<std::size_t>(choose(n, 3))};
  }

  const DistanceMatrix dx = pairwise_distances(sample.x());
  const DistanceMatrix dy = pairwise_distances(sample.y());
  const auto pa = distances_to(point.x, sample.x());
  const auto pb = distances_to(point.y, sample.y());

  if (options.mode == H1Mode::exhaustive) {
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t c = b + 1; c < n; ++c) {
          total += kernel_with_point(dx, dy, pa, pb, a, b, c);
          ++count;
        }
      }
    }
    return {total / static_cast<double>(count), 0.0, count};
  }

  if (options.triple_budget < 2) throw DomainError("h1_hat: triple budget must be >= 2");
  Engine engine = make_engine(options.seed, 0);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < options.triple_budget; ++t) {
    const std::size_t a = uniform_index(engine, n);
    std::size_t b, c;
    do b = uniform_index(engine, n);
    while (b == a);
    do c = uniform_index(engine, n);
    while (c == a || c == b);
    const double k = kernel_with_point(dx, dy, pa, pb, a, b, c);
    sum += k;
    sum_sq += k * k;
  }
  const double m = static_cast<double>(options.triple_budget);
  const double mean = sum / m;
  const double var = std::max(0.0, (sum_sq - m * mean * mean) / (m - 1.0));
  return {mean, std::sqrt(var / m), options.triple_budget};
}

double h2_hat(Observation point1, Observation point2, const PairedSample& sample) {
  const std::size_t n = sample.n();
  if (n < 2) throw SampleSizeError("h2_hat", 2, n);
  check_dims(point1, sample, "h2_hat");
  check_dims(point2, sample, "h2_hat");

  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      total += kernel_h({point1, point2, sample[a], sample[b]});
    }
  }
  return total / choose(n, 2);
}

ProjectionReference::ProjectionReference(PairedSample sample)
    : sample_(std::move(sample)),
      dx_(pairwise_distances(sample_.x())),
      dy_(pairwise_distances(sample_.y())),
      sums_(fast_sums(dx_, dy_)),
      total_(subset_total(sums_)) {}

double ProjectionReference::h1(Observation point) const {
  const std::size_t n = sample_.n();
  if (n < 3) throw SampleSizeError("h1", 3, n);
  check_dims(point, sample_, "h1");
  const auto pa = distances_to(point.x, sample_.x());
  const auto pb = distances_to(point.y, sample_.y());
  const auto ra = dx_.row_sums();
  const auto rb = dy_.row_sums();

  double cross = 0.0, rp = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cross += pa[j] * pb[j];
    rp += ra[j] * pb[j] + pa[j] * rb[j] + pa[j] * pb[j];
  }
  const double sa = sum_of(pa), sb = sum_of(pb);
  FastSums aug;
  aug.n = n + 1;
  aug.cross = sums_.cross + 2.0 * cross;
  aug.x_total = sums_.x_total + 2.0 * sa;
  aug.y_total = sums_.y_total + 2.0 * sb;
  aug.row_product = sums_.row_product + rp + sa * sb;
  return (subset_total(aug) - total_) / choose(n, 3);
}

double ProjectionReference::h2(Observation point1, Observation point2) const {
  const std::size_t n = sample_.n();
  if (n < 2) throw SampleSizeError("h2", 2, n);
  check_dims(point1, sample_, "h2");
  check_dims(point2, sample_, "h2");
  const auto a1 = distances_to(point1.x, sample_.x());
  const auto b1 = distances_to(point1.y, sample_.y());
  const auto a2 = distances_to(point2.x, sample_.x());
  const auto b2 = distances_to(point2.y, sample_.y());
  const double a12 = euclidean_distance(point1.x, point2.x);
  const double b12 = euclidean_distance(point1.y, point2.y);
  const auto ra = dx_.row_sums();
  const auto rb = dy_.row_sums();

  double c1 = 0.0, c2 = 0.0, rp1 = 0.0, rp2 = 0.0, rp12 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    c1 += a1[j] * b1[j];
    c2 += a2[j] * b2[j];
    rp1 += (ra[j] + a1[j]) * (rb[j] + b1[j]);
    rp2 += (ra[j] + a2[j]) * (rb[j] + b2[j]);
    rp12 += (ra[j] + a1[j] + a2[j]) * (rb[j] + b1[j] + b2[j]);
  }
  const double sa1 = sum_of(a1), sb1 = sum_of(b1), sa2 = sum_of(a2), sb2 = sum_of(b2);

  FastSums with1{n + 1, sums_.cross + 2.0 * c1, sums_.x_total + 2.0 * sa1,
                 sums_.y_total + 2.0 * sb1, rp1 + sa1 * sb1};
  FastSums with2{n + 1, sums_.cross + 2.0 * c2, sums_.x_total + 2.0 * sa2,
                 sums_.y_total + 2.0 * sb2, rp2 + sa2 * sb2};
  FastSums both{n + 2,
                sums_.cross + 2.0 * (c1 + c2 + a12 * b12),
                sums_.x_total + 2.0 * (sa1 + sa2 + a12),
                sums_.y_total + 2.0 * (sb1 + sb2 + b12),
                rp12 + (sa1 + a12) * (sb1 + b12) + (sa2 + a12) * (sb2 + b12)};
  const double pairs_total =
      subset_total(both) - subset_total(with1) - subset_total(with2) + total_;
  return pairs_total / choose(n, 2);
}

double ProjectionReference::h1_leave_one_out(std::size_t i) const {
  const std::size_t n = sample_.n();
  if (n < 4) throw SampleSizeError("h1_leave_one_out", 4, n);
  const auto ai = dx_.row(i);
  const auto bi = dy_.row(i);
  const auto ra = dx_.row_sums();
  const auto rb = dy_.row_sums();

  double cross = 0.0, rp = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cross += ai[j] * bi[j];
    if (j != i) rp += (ra[j] - ai[j]) * (rb[j] - bi[j]);
  }
  FastSums rest{n - 1, sums_.cross - 2.0 * cross, sums_.x_total - 2.0 * ra[i],
                sums_.y_total - 2.0 * rb[i], rp};
  return (total_ - subset_total(rest)) / choose(n - 1, 3);
}

double var_h1_hat(const PairedSample& sample, std::size_t eval_budget, std::uint64_t seed) {
  if (sample.n() < 10) throw SampleSizeError("var_h1_hat", 10, sample.n());
  if (eval_budget < 2) throw DomainError("var_h1_hat: eval_budget must be >= 2");
  const ProjectionReference ref(sample);
  Engine engine = make_engine(seed, 0);
  const auto points = sample_without_replacement(sample.n(), eval_budget, engine);

  std::vector<double> values;
  values.reserve(points.size());
  for (std::size_t i : points) values.push_back(ref.h1_leave_one_out(i));
  const double mean = sum_of(values) / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size() - 1);
}

double var_h2_hat(const PairedSample& sample, std::size_t eval_pairs, std::uint64_t seed) {
  if (eval_pairs < 2) throw DomainError("var_h2_hat: eval_pairs must be >= 2");
  const std::size_t needed = 2 * eval_pairs + 4;
  if (sample.n() < needed) throw SampleSizeError("var_h2_hat", needed, sample.n());

  Engine engine = make_engine(seed, 0);
  auto order = random_permutation(sample.n(), engine);
  const std::span<const std::size_t> held(order.data(), 2 * eval_pairs);
  const std::span<const std::size_t> rest(order.data() + 2 * eval_pairs,
                                          order.size() - 2 * eval_pairs);
  const ProjectionReference ref(sample.subset(rest));

  std::vector<double> values(eval_pairs);
  for (std::size_t k = 0; k < eval_pairs; ++k) {
    values[k] = ref.h2(sample[held[2 * k]], sample[held[2 * k + 1]]);
  }
  const double mean = sum_of(values) / static_cast<double>(eval_pairs);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(eval_pairs - 1);
}

LimitSpectrum h2_spectrum(const PairedSample& sample, std::size_t basis_size, std::uint64_t seed,
                          unsigned threads) {
  const std::size_t n = sample.n();
  if (basis_size < 2 || basis_size > n) {
    throw DomainError("h2_spectrum: basis_size must lie in [2, n], got " +
                      std::to_string(basis_size) + " with n = " + std::to_string(n));
  }
  Engine engine = make_engine(seed, 0);
  const auto basis = sample_without_replacement(n, basis_size, engine);
  const ProjectionReference ref(sample);

  Eigen::MatrixXd m(basis_size, basis_size);
  parallel_for(basis_size, threads, [&](std::size_t a) {
    for (std::size_t b = a; b < basis_size; ++b) {
      m(a, b) = ref.h2(sample[basis[a]], sample[basis[b]]);
    }
  });
  for (std::size_t a = 0; a < basis_size; ++a) {
    for (std::size_t b = 0; b < a; ++b) m(a, b) = m(b, a);
  }
  m = 0.5 * (m + m.transpose().eval());
  m /= static_cast<double>(basis_size);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("h2_spectrum: eigendecomposition failed");
  LimitSpectrum spectrum;
  spectrum.n_basis = basis_size;
  const auto& ev = solver.eigenvalues();
  spectrum.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), std::greater<>());
  return spectrum;
}

double mixture_variance(const LimitSpectrum& spectrum) noexcept {
  double s = 0.0;
  for (double l : spectrum.eigenvalues) s += l * l;
  return 72.0 * s;
}

std::vector<double> sample_degenerate_limit(const LimitSpectrum& spectrum, std::size_t reps,
                                            std::uint64_t seed, unsigned threads) {
  if (spectrum.eigenvalues.empty()) throw DomainError("sample_degenerate_limit: empty spectrum");
  if (reps == 0) throw DomainError("sample_degenerate_limit: reps must be >= 1");
  std::vector<double> draws(reps);
  const std::size_t chunks = (reps + kDrawChunk - 1) / kDrawChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    Engine engine = make_engine(seed, c);
    const std::size_t end = std::min(reps, (c + 1) * kDrawChunk);
    for (std::size_t r = c * kDrawChunk; r < end; ++r) {
      double s = 0.0;
      for (double lambda : spectrum.eigenvalues) {
        const double z = standard_normal(engine);
        s += lambda * (z * z - 1.0);
      }
      draws[r] = 6.0 * s;
    }
  });
  return draws;
}

std::vector<double> sample_normal_limit(double variance_h1, std::size_t reps, std::uint64_t seed) {
  if (!(variance_h1 >= 0.0)) throw DomainError("sample_normal_limit: variance must be >= 0");
  if (reps == 0) throw DomainError("sample_normal_limit: reps must be >= 1");
  const double sd = 4.0 * std::sqrt(variance_h1);
  Engine engine = make_engine(seed, 0);
  std::vector<double> draws(reps);
  for (auto& d : draws) d = sd * standard_normal(engine);
  return draws;
}

}  // namespace dcov
