#pragma once

#include <optional>

#include "sdesign/design_matrix.hpp"

namespace sdesign {

// Squared scaling factors of a block construction. delta_sq is absent for
// the split merge, beta_sq for the antipodal lift.
struct MergeCoefficients {
  double alpha_sq = 0.0;
  std::optional<double> beta_sq;
  std::optional<double> delta_sq;
};

// (I | -I): the 2d+2 signed unit vectors, a tight 3-design on S^d.
DesignMatrix octahedron(int d);

// (A | -A). A must verify at an even strength t; the result has strength t+1.
DesignMatrix double_antipodal(const DesignMatrix& a);

// alpha^2 = d/(d+1), delta^2 = 1/(d+1).
MergeCoefficients lift_coefficients(int d);

//   ( alpha*A  -alpha*A )
//   ( delta*J  -delta*J )
// A is a 2-design of size n1 on S^{d-1}; the result is a 3-design of size
// 2*n1 on S^d.
DesignMatrix lift_antipodal(const DesignMatrix& a);

// alpha^2 = 1 - d2*n2/(d1*n1), beta^2 = 1 + n2/n1.
// Throws InfeasibleCoefficientError when d1*n1 < d2*n2.
MergeCoefficients split_merge_coefficients(int d1, int d2, int n1, int n2);

//   ( alpha*A_top  C )
//   ( beta*A_bot   0 )
// A is a 3-design of size n1 on S^d, d = d1+d2-1, whose columns all have
// squared norm d1/(d+1) over the top d1 rows (true of regular designs). C is
// a 3-design of size n2 on S^{d1-1}. d1 and d2 are positive and even.
DesignMatrix merge_split(const DesignMatrix& a, const DesignMatrix& c, int d1, int d2);

// With d = d1+d2:
//   alpha^2 = d/(d+1) * (1 - (d2+1)*n2/(2*d1*n1)),
//   beta^2  = d/(d+1) * (1 + n2/(2*n1)),
//   delta^2 = 1/(d+1) * (1 + n2/(2*n1)).
// Throws InfeasibleCoefficientError when 2*d1*n1 < (d2+1)*n2.
MergeCoefficients antipodal_merge_coefficients(int d1, int d2, int n1, int n2);

//   ( alpha*A_top  -alpha*A_top  C )
//   ( beta*A_bot   -beta*A_bot   0 )
//   ( delta*J      -delta*J      0 )
// A is a 2-design of size n1 on S^{d-1}, d = d1+d2 even, whose columns have
// squared norm d1/d over the top d1 rows. C is a 3-design of size n2 on
// S^{d1-1}. d1 is positive and even; d2 is even and may be 0, in which case
// the beta block is empty.
DesignMatrix merge_antipodal(const DesignMatrix& a, const DesignMatrix& c, int d1, int d2);

// Largest deviation, over all columns, of the squared norm of rows
// [0, rows) from `expected`.
double top_block_norm_deviation(const DesignMatrix& a, int rows, double expected);

}  // namespace sdesign
