#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dcov {

/// Dense row-major real matrix. One row per observation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix column(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  const std::vector<double>& data() const noexcept { return data_; }

  /// Rows selected (and reordered) by index.
  Matrix select_rows(std::span<const std::size_t> indices) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// One joint observation (x, y).
struct Observation {
  std::span<const double> x;
  std::span<const double> y;
};

/// n joint observations: X is n x p, Y is n x q. Entries are finite and the
/// row counts agree; both are checked on construction.
class PairedSample {
 public:
  PairedSample(Matrix x, Matrix y);

  std::size_t n() const noexcept { return x_.rows(); }
  std::size_t p() const noexcept { return x_.cols(); }
  std::size_t q() const noexcept { return y_.cols(); }

  const Matrix& x() const noexcept { return x_; }
  const Matrix& y() const noexcept { return y_; }

  Observation operator[](std::size_t i) const noexcept { return {x_.row(i), y_.row(i)}; }

  /// Keeps X in place and reorders Y rows: row i of the result pairs X_i with Y_perm[i].
  PairedSample with_permuted_y(std::span<const std::size_t> perm) const;
  PairedSample subset(std::span<const std::size_t> indices) const;
  PairedSample head(std::size_t m) const;
  /// (Y, X).
  PairedSample swapped() const { return PairedSample(y_, x_); }

 private:
  Matrix x_;
  Matrix y_;
};

enum class EstimatorKind { naive_u, fast_u, cf_mc };

std::string to_string(EstimatorKind kind);

/// A distance covariance value tagged with how it was obtained.
struct DCovEstimate {
  double value = 0.0;
  EstimatorKind kind = EstimatorKind::fast_u;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t q = 0;
  /// Monte Carlo standard error; zero for the exact estimators.
  double standard_error = 0.0;
};

}  // namespace dcov
