#include "dcov/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dcov/errors.hpp"
#include "dcov/parallel.hpp"

namespace dcov {
namespace {

void require_n(std::size_t n, std::size_t minimum, const char* what) {
  if (n < minimum) throw SampleSizeError(what, minimum, n);
}

QuadDistances quad_table(std::span<const double> const (&pts)[4]) {
  QuadDistances d{};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      d[i][j] = d[j][i] = euclidean_distance(pts[i], pts[j]);
    }
  }
  return d;
}

}  // namespace

double kernel_h(const QuadDistances& a, const QuadDistances& b) noexcept {
  const double same = a[0][1] * b[0][1] + a[0][2] * b[0][2] + a[0][3] * b[0][3] +
                      a[1][2] * b[1][2] + a[1][3] * b[1][3] + a[2][3] * b[2][3];
  const double complementary = a[0][1] * b[2][3] + a[2][3] * b[0][1] + a[0][2] * b[1][3] +
                               a[1][3] * b[0][2] + a[0][3] * b[1][2] + a[1][2] * b[0][3];
  double rows = 0.0;
  for (int i = 0; i < 4; ++i) {
    rows += (a[i][0] + a[i][1] + a[i][2] + a[i][3]) * (b[i][0] + b[i][1] + b[i][2] + b[i][3]);
  }
  return (4.0 * same + 2.0 * complementary - rows) / 12.0;
}

double kernel_h(const std::array<Observation, 4>& z) {
  const std::size_t p = z[0].x.size();
  const std::size_t q = z[0].y.size();
  for (const auto& o : z) {
    if (o.x.size() != p || o.y.size() != q) {
      throw DomainError("kernel_h: observations have inconsistent dimensions");
    }
  }
  const std::span<const double> xs[4] = {z[0].x, z[1].x, z[2].x, z[3].x};
  const std::span<const double> ys[4] = {z[0].y, z[1].y, z[2].y, z[3].y};
  return kernel_h(quad_table(xs), quad_table(ys));
}

double fast_value(const FastSums& s) noexcept {
  const double n = static_cast<double>(s.n);
  return (s.cross + s.x_total * s.y_total / ((n - 1.0) * (n - 2.0)) -
          2.0 * s.row_product / (n - 2.0)) /
         (n * (n - 3.0));
}

double subset_total(const FastSums& s) noexcept {
  if (s.n < 4) return 0.0;
  const double n = static_cast<double>(s.n);
  return ((n - 1.0) * (n - 2.0) * s.cross + s.x_total * s.y_total -
          2.0 * (n - 1.0) * s.row_product) /
         24.0;
}

FastSums fast_sums(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  if (dx.n() != dy.n()) {
    throw DataError("distance matrices differ in size: " + std::to_string(dx.n()) + " vs " +
                    std::to_string(dy.n()));
  }
  FastSums s;
  s.n = dx.n();
  for (std::size_t i = 0; i < s.n; ++i) {
    const auto ra = dx.row(i);
    const auto rb = dy.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < s.n; ++j) acc += ra[j] * rb[j];
    s.cross += acc;
    s.row_product += dx.row_sums()[i] * dy.row_sums()[i];
  }
  s.x_total = dx.grand_sum();
  s.y_total = dy.grand_sum();
  return s;
}

DCovEstimate dcov_usq_fast(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  const FastSums s = fast_sums(dx, dy);
  require_n(s.n, 4, "dcov_usq_fast");
  return {fast_value(s), EstimatorKind::fast_u, s.n, dx.dimension(), dy.dimension(), 0.0};
}

DCovEstimate dcov_usq_fast(const PairedSample& sample) {
  require_n(sample.n(), 4, "dcov_usq_fast");
  return dcov_usq_fast(pairwise_distances(sample.x()), pairwise_distances(sample.y()));
}

DCovEstimate dcov_usq_naive(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  if (dx.n() != dy.n()) throw DataError("distance matrices differ in size");
  const std::size_t n = dx.n();
  require_n(n, 4, "dcov_usq_naive");

  double total = 0.0;
  QuadDistances a{}, b{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      a[0][1] = a[1][0] = dx(i, j);
      b[0][1] = b[1][0] = dy(i, j);
      for (std::size_t k = j + 1; k < n; ++k) {
        a[0][2] = a[2][0] = dx(i, k);
        a[1][2] = a[2][1] = dx(j, k);
        b[0][2] = b[2][0] = dy(i, k);
        b[1][2] = b[2][1] = dy(j, k);
        double inner = 0.0;
        for (std::size_t l = k + 1; l < n; ++l) {
          a[0][3] = a[3][0] = dx(i, l);
          a[1][3] = a[3][1] = dx(j, l);
          a[2][3] = a[3][2] = dx(k, l);
          b[0][3] = b[3][0] = dy(i, l);
          b[1][3] = b[3][1] = dy(j, l);
          b[2][3] = b[3][2] = dy(k, l);
          inner += kernel_h(a, b);
        }
        total += inner;
      }
    }
  }
  const double nd = static_cast<double>(n);
  const double subsets = nd * (nd - 1.0) * (nd - 2.0) * (nd - 3.0) / 24.0;
  return {total / subsets, EstimatorKind::naive_u, n, dx.dimension(), dy.dimension(), 0.0};
}

DCovEstimate dcov_usq_naive(const PairedSample& sample) {
  require_n(sample.n(), 4, "dcov_usq_naive");
  return dcov_usq_naive(pairwise_distances(sample.x()), pairwise_distances(sample.y()));
}

DCovEstimate dcov_usq_streaming(const PairedSample& sample, unsigned threads) {
  const std::size_t n = sample.n();
  require_n(n, 4, "dcov_usq_streaming");
  const Matrix& x = sample.x();
  const Matrix& y = sample.y();

  std::vector<double> ra(n), rb(n), cross(n);
  parallel_for(n, threads, [&](std::size_t i) {
    double sa = 0.0, sb = 0.0, sab = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = euclidean_distance(x.row(i), x.row(j));
      const double b = euclidean_distance(y.row(i), y.row(j));
      sa += a;
      sb += b;
      sab += a * b;
    }
    ra[i] = sa;
    rb[i] = sb;
    cross[i] = sab;
  });

  FastSums s;
  s.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    s.cross += cross[i];
    s.x_total += ra[i];
    s.y_total += rb[i];
    s.row_product += ra[i] * rb[i];
  }
  return {fast_value(s), EstimatorKind::fast_u, n, sample.p(), sample.q(), 0.0};
}

double dvar_usq(const DistanceMatrix& dx) {
  require_n(dx.n(), 4, "dvar_usq");
  return dcov_usq_fast(dx, dx).value;
}

double dcor_sq(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  require_n(dx.n(), 4, "dcor_sq");
  const double vxx = dvar_usq(dx);
  const double vyy = dvar_usq(dy);
  if (vxx <= 0.0 || vyy <= 0.0) return 0.0;
  const double r = dcov_usq_fast(dx, dy).value / std::sqrt(vxx * vyy);
  return std::clamp(r, -1.0, 1.0);
}

double dcor_sq(const PairedSample& sample) {
  require_n(sample.n(), 4, "dcor_sq");
  return dcor_sq(pairwise_distances(sample.x()), pairwise_distances(sample.y()));
}

double classical_cov_stat(const PairedSample& sample) {
  const std::size_t n = sample.n();
  require_n(n, 2, "classical_cov_stat");
  const std::size_t p = sample.p();
  const std::size_t q = sample.q();

  std::vector<double> mx(p, 0.0), my(q, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) mx[a] += sample.x()(i, a);
    for (std::size_t b = 0; b < q; ++b) my[b] += sample.y()(i, b);
  }
  for (auto& v : mx) v /= static_cast<double>(n);
  for (auto& v : my) v /= static_cast<double>(n);

  std::vector<double> cov(p * q, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      const double dx = sample.x()(i, a) - mx[a];
      for (std::size_t b = 0; b < q; ++b) cov[a * q + b] += dx * (sample.y()(i, b) - my[b]);
    }
  }
  double frob = 0.0;
  for (double c : cov) {
    const double v = c / static_cast<double>(n - 1);
    frob += v * v;
  }
  return frob;
}

}  // namespace dcov
