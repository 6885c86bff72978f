#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sdesign {

// Neumaier's variant of Kahan summation. Adding the same values in the same
// order always gives the same bits.
class CompensatedSum {
 public:
  void add(double value) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Dense row-major matrix used while assembling block constructions.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  double& operator()(int row, int col) { return data_[index(row, col)]; }
  double operator()(int row, int col) const { return data_[index(row, col)]; }

  std::span<const double> row(int r) const;
  std::span<double> row(int r);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Columns of a DesignMatrix may deviate from unit norm by at most this much
// before construction is refused. Verification applies its own, tighter
// tolerance.
inline constexpr double kDefaultNormTolerance = 1e-6;

// A (d+1) x n matrix whose columns are points on S^d, together with the
// strength t in {1,2,3} it is claimed to have. Immutable.
class DesignMatrix {
 public:
  // Throws DomainError for d < 1, n < 1, t outside {1,2,3}, non-finite
  // entries, or a column norm off by more than norm_tolerance.
  DesignMatrix(Matrix points, int strength, std::string provenance = {},
               double norm_tolerance = kDefaultNormTolerance);

  int dimension() const noexcept { return points_.rows() - 1; }
  int size() const noexcept { return points_.cols(); }
  int strength() const noexcept { return strength_; }
  const std::string& provenance() const noexcept { return provenance_; }
  const Matrix& points() const noexcept { return points_; }

  double operator()(int row, int col) const { return points_(row, col); }

  double column_norm_squared(int col) const;

  DesignMatrix with_provenance(std::string provenance) const;
  DesignMatrix with_strength(int strength) const;

 private:
  Matrix points_;
  int strength_;
  std::string provenance_;
};

// 1e-9 * max(1, n): the default acceptance threshold for raw residual sums.
double default_tolerance(int size) noexcept;

}  // namespace sdesign
