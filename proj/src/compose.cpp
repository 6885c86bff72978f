#include "sdesign/compose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "sdesign/errors.hpp"
#include "sdesign/harmonic.hpp"

namespace sdesign {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Regular designs satisfy the block-norm condition up to a few roundings
// of the scale factor per entry.
constexpr double kBlockNormTolerance = 8 * kEps;

void require_verified(const DesignMatrix& m, int strength, const char* role) {
  const VerificationReport report = verify_design(m, strength);
  if (!report.passed) {
    throw PreconditionError(fmt::format(
        "{} is not a {}-design on S^{} (worst residual {:.3g} at {}, norm deviation {:.3g})",
        role, strength, m.dimension(), report.worst_residual, report.worst_polynomial,
        report.norm_max_deviation));
  }
}

void require_even_positive(int value, const char* name) {
  if (value < 1 || value % 2 != 0) {
    throw DomainError(fmt::format("{} = {} must be a positive even integer", name, value));
  }
}

void require_block_norms(const DesignMatrix& a, int rows, int total_rows) {
  const double expected = static_cast<double>(rows) / total_rows;
  const double dev = top_block_norm_deviation(a, rows, expected);
  if (!(dev <= kBlockNormTolerance)) {
    throw PreconditionError(fmt::format(
        "A is not regular: top {} rows have squared column norms off {:.3g} by {:.3g}",
        rows, expected, dev));
  }
}

void require_feasible(double alpha_sq, const std::string& inequality) {
  if (alpha_sq < 0.0) {
    throw InfeasibleCoefficientError(
        fmt::format("alpha^2 = {:.6g} < 0: need {}", alpha_sq, inequality));
  }
}

}  // namespace

DesignMatrix octahedron(int d) {
  if (d < 1) throw DomainError(fmt::format("octahedron needs d >= 1 (got {})", d));
  Matrix points(d + 1, 2 * d + 2);
  for (int i = 0; i <= d; ++i) {
    points(i, i) = 1.0;
    points(i, d + 1 + i) = -1.0;
  }
  return DesignMatrix(std::move(points), 3, fmt::format("Octahedron(d={})", d));
}

DesignMatrix double_antipodal(const DesignMatrix& a) {
  const int t = a.strength();
  if (t % 2 != 0) {
    throw PreconditionError(fmt::format("doubling needs an even strength, A claims {}", t));
  }
  require_verified(a, t, "A");
  const int n = a.size();
  Matrix points(a.dimension() + 1, 2 * n);
  for (int r = 0; r <= a.dimension(); ++r) {
    for (int k = 0; k < n; ++k) {
      points(r, k) = a(r, k);
      points(r, n + k) = -a(r, k);
    }
  }
  return DesignMatrix(std::move(points), t + 1,
                      fmt::format("Double(A=[{}])", a.provenance()));
}

MergeCoefficients lift_coefficients(int d) {
  if (d < 1) throw DomainError(fmt::format("lift needs d >= 1 (got {})", d));
  return {.alpha_sq = static_cast<double>(d) / (d + 1),
          .beta_sq = std::nullopt,
          .delta_sq = 1.0 / (d + 1)};
}

DesignMatrix lift_antipodal(const DesignMatrix& a) {
  require_verified(a, 2, "A");
  const int d = a.dimension() + 1;
  const MergeCoefficients k = lift_coefficients(d);
  const double alpha = std::sqrt(k.alpha_sq);
  const double delta = std::sqrt(*k.delta_sq);
  const int n1 = a.size();
  Matrix points(d + 1, 2 * n1);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < n1; ++c) {
      points(r, c) = alpha * a(r, c);
      points(r, n1 + c) = -alpha * a(r, c);
    }
  }
  for (int c = 0; c < n1; ++c) {
    points(d, c) = delta;
    points(d, n1 + c) = -delta;
  }
  return DesignMatrix(std::move(points), 3,
                      fmt::format("AntipodalLift(d={}; A=[{}])", d, a.provenance()));
}

MergeCoefficients split_merge_coefficients(int d1, int d2, int n1, int n2) {
  require_even_positive(d1, "d1");
  require_even_positive(d2, "d2");
  if (n1 < 1 || n2 < 1) throw DomainError("block sizes must be positive");
  const long long big = static_cast<long long>(d1) * n1;
  const long long small = static_cast<long long>(d2) * n2;
  const double alpha_sq = static_cast<double>(big - small) / static_cast<double>(big);
  require_feasible(alpha_sq, fmt::format("d1*n1 = {} >= d2*n2 = {}", big, small));
  return {.alpha_sq = alpha_sq,
          .beta_sq = static_cast<double>(n1 + n2) / n1,
          .delta_sq = std::nullopt};
}

DesignMatrix merge_split(const DesignMatrix& a, const DesignMatrix& c, int d1, int d2) {
  const MergeCoefficients k = split_merge_coefficients(d1, d2, a.size(), c.size());
  const int d = d1 + d2 - 1;
  if (a.dimension() != d) {
    throw ShapeError(fmt::format("A lies on S^{}, expected S^{}", a.dimension(), d));
  }
  if (c.dimension() != d1 - 1) {
    throw ShapeError(fmt::format("C lies on S^{}, expected S^{}", c.dimension(), d1 - 1));
  }
  require_verified(a, 3, "A");
  require_verified(c, 3, "C");
  require_block_norms(a, d1, d + 1);

  const double alpha = std::sqrt(k.alpha_sq);
  const double beta = std::sqrt(*k.beta_sq);
  const int n1 = a.size();
  Matrix points(d + 1, n1 + c.size());
  for (int r = 0; r <= d; ++r) {
    const double scale = r < d1 ? alpha : beta;
    for (int col = 0; col < n1; ++col) points(r, col) = scale * a(r, col);
  }
  for (int r = 0; r < d1; ++r) {
    for (int col = 0; col < c.size(); ++col) points(r, n1 + col) = c(r, col);
  }
  return DesignMatrix(std::move(points), 3,
                      fmt::format("SplitMerge(d1={}, d2={}; A=[{}]; C=[{}])", d1, d2,
                                  a.provenance(), c.provenance()));
}

MergeCoefficients antipodal_merge_coefficients(int d1, int d2, int n1, int n2) {
  require_even_positive(d1, "d1");
  if (d2 < 0 || d2 % 2 != 0) {
    throw DomainError(fmt::format("d2 = {} must be a non-negative even integer", d2));
  }
  if (n1 < 1 || n2 < 1) throw DomainError("block sizes must be positive");
  const long long d = d1 + d2;
  const long long twice = 2LL * d1 * n1;
  const long long need = static_cast<long long>(d2 + 1) * n2;
  const double alpha_sq = static_cast<double>(d * (twice - need)) /
                          static_cast<double>((d + 1) * twice);
  require_feasible(alpha_sq, fmt::format("2*d1*n1 = {} >= (d2+1)*n2 = {}", twice, need));
  const long long widened = 2LL * n1 + n2;
  return {.alpha_sq = alpha_sq,
          .beta_sq = static_cast<double>(d * widened) / static_cast<double>((d + 1) * 2 * n1),
          .delta_sq = static_cast<double>(widened) / static_cast<double>((d + 1) * 2 * n1)};
}

DesignMatrix merge_antipodal(const DesignMatrix& a, const DesignMatrix& c, int d1, int d2) {
  const MergeCoefficients k = antipodal_merge_coefficients(d1, d2, a.size(), c.size());
  const int d = d1 + d2;
  if (a.dimension() != d - 1) {
    throw ShapeError(fmt::format("A lies on S^{}, expected S^{}", a.dimension(), d - 1));
  }
  if (c.dimension() != d1 - 1) {
    throw ShapeError(fmt::format("C lies on S^{}, expected S^{}", c.dimension(), d1 - 1));
  }
  require_verified(a, 2, "A");
  require_verified(c, 3, "C");
  require_block_norms(a, d1, d);

  const double alpha = std::sqrt(k.alpha_sq);
  const double beta = std::sqrt(*k.beta_sq);
  const double delta = std::sqrt(*k.delta_sq);
  const int n1 = a.size();
  const int n2 = c.size();
  Matrix points(d + 1, 2 * n1 + n2);
  for (int r = 0; r < d; ++r) {
    const double scale = r < d1 ? alpha : beta;
    for (int col = 0; col < n1; ++col) {
      points(r, col) = scale * a(r, col);
      points(r, n1 + col) = -scale * a(r, col);
    }
  }
  for (int col = 0; col < n1; ++col) {
    points(d, col) = delta;
    points(d, n1 + col) = -delta;
  }
  for (int r = 0; r < d1; ++r) {
    for (int col = 0; col < n2; ++col) points(r, 2 * n1 + col) = c(r, col);
  }
  return DesignMatrix(std::move(points), 3,
                      fmt::format("AntipodalMerge(d1={}, d2={}; A=[{}]; C=[{}])", d1, d2,
                                  a.provenance(), c.provenance()));
}

double top_block_norm_deviation(const DesignMatrix& a, int rows, double expected) {
  if (rows < 0 || rows > a.dimension() + 1) {
    throw ShapeError(fmt::format("block of {} rows in a matrix with {} rows", rows,
                                 a.dimension() + 1));
  }
  double dev = 0.0;
  for (int col = 0; col < a.size(); ++col) {
    CompensatedSum sum;
    for (int r = 0; r < rows; ++r) sum.add(a(r, col) * a(r, col));
    dev = std::max(dev, std::abs(sum.value() - expected));
  }
  return dev;
}

}  // namespace sdesign
