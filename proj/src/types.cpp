#include "dcov/types.hpp"

#include <cmath>

#include "dcov/errors.hpp"

namespace dcov {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DataError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                    std::to_string(rows * cols));
  }
}

Matrix Matrix::column(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto src = row(indices[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

namespace {

void check_finite(const Matrix& block, const char* name) {
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (double v : block.row(i)) {
      if (!std::isfinite(v)) {
        throw DataError(std::string("non-finite entry in ") + name + " block at row " +
                        std::to_string(i));
      }
    }
  }
}

}  // namespace

PairedSample::PairedSample(Matrix x, Matrix y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.rows()) {
    throw DataError("X has " + std::to_string(x_.rows()) + " rows but Y has " +
                    std::to_string(y_.rows()));
  }
  if (x_.rows() == 0) throw DataError("empty sample");
  if (x_.cols() == 0 || y_.cols() == 0) throw DataError("sample blocks need at least one column");
  check_finite(x_, "X");
  check_finite(y_, "Y");
}

PairedSample PairedSample::with_permuted_y(std::span<const std::size_t> perm) const {
  return PairedSample(x_, y_.select_rows(perm));
}

PairedSample PairedSample::subset(std::span<const std::size_t> indices) const {
  return PairedSample(x_.select_rows(indices), y_.select_rows(indices));
}

PairedSample PairedSample::head(std::size_t m) const {
  std::vector<std::size_t> idx(std::min(m, n()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return subset(idx);
}

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::naive_u:
      return "naive-U";
    case EstimatorKind::fast_u:
      return "fast-U";
    case EstimatorKind::cf_mc:
      return "cf-mc";
  }
  return "unknown";
}

}  // namespace dcov
