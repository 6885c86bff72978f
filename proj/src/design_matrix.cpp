#include "sdesign/design_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "sdesign/errors.hpp"

namespace sdesign {

void CompensatedSum::add(double value) noexcept {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    compensation_ += (sum_ - t) + value;
  } else {
    compensation_ += (value - t) + sum_;
  }
  sum_ = t;
}

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(std::max(rows, 0)) *
                static_cast<std::size_t>(std::max(cols, 0)),
            fill) {
  if (rows < 0 || cols < 0) {
    throw ShapeError(fmt::format("negative matrix shape {}x{}", rows, cols));
  }
}

std::span<const double> Matrix::row(int r) const {
  return {data_.data() + index(r, 0), static_cast<std::size_t>(cols_)};
}

std::span<double> Matrix::row(int r) {
  return {data_.data() + index(r, 0), static_cast<std::size_t>(cols_)};
}

DesignMatrix::DesignMatrix(Matrix points, int strength, std::string provenance,
                           double norm_tolerance)
    : points_(std::move(points)),
      strength_(strength),
      provenance_(std::move(provenance)) {
  if (points_.rows() < 2) {
    throw DomainError(fmt::format(
        "design needs d >= 1 (got {} coordinate rows)", points_.rows()));
  }
  if (points_.cols() < 1) {
    throw DomainError("design needs at least one point");
  }
  if (strength_ < 1 || strength_ > 3) {
    throw DomainError(fmt::format("strength {} outside {{1,2,3}}", strength_));
  }
  for (int r = 0; r < points_.rows(); ++r) {
    for (double x : points_.row(r)) {
      if (!std::isfinite(x)) {
        throw DomainError("design entries must be finite");
      }
    }
  }
  for (int k = 0; k < size(); ++k) {
    const double dev = std::abs(column_norm_squared(k) - 1.0);
    if (!(dev <= norm_tolerance)) {
      throw DomainError(fmt::format(
          "column {} has squared norm off by {:.3g} (limit {:.3g})", k, dev,
          norm_tolerance));
    }
  }
}

double DesignMatrix::column_norm_squared(int col) const {
  CompensatedSum sum;
  for (int r = 0; r < points_.rows(); ++r) {
    const double x = points_(r, col);
    sum.add(x * x);
  }
  return sum.value();
}

DesignMatrix DesignMatrix::with_provenance(std::string provenance) const {
  DesignMatrix copy = *this;
  copy.provenance_ = std::move(provenance);
  return copy;
}

DesignMatrix DesignMatrix::with_strength(int strength) const {
  return DesignMatrix(points_, strength, provenance_);
}

double default_tolerance(int size) noexcept {
  return 1e-9 * std::max(1.0, static_cast<double>(size));
}

}  // namespace sdesign
