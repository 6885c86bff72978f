#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sdesign/design_matrix.hpp"

namespace sdesign {

struct Term {
  int coefficient = 0;
  std::vector<int> exponents;  // one entry per coordinate x_0 .. x_d

  friend bool operator==(const Term&, const Term&) = default;
};

// A homogeneous polynomial in d+1 variables with integer coefficients,
// stored as a list of exponent vectors. Used for the elements of the
// harmonic bases Phi_1, Phi_2, Phi_3.
class HarmonicPolynomial {
 public:
  // Throws ShapeError if the terms are empty, have exponent vectors of
  // different lengths, or are not all of the same total degree.
  explicit HarmonicPolynomial(std::vector<Term> terms);

  int degree() const noexcept { return degree_; }
  int variables() const noexcept { return variables_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  double evaluate(std::span<const double> point) const;

  // Human-readable form, e.g. "x0^3 - 3*x0*x1^2".
  std::string describe() const;

 private:
  struct Factor {
    int variable;
    int power;
  };

  std::vector<Term> terms_;
  std::vector<std::vector<Factor>> factors_;  // sparse view of terms_
  int degree_ = 0;
  int variables_ = 0;
};

// Symbolic Laplacian: exponent vector -> coefficient, zero entries dropped.
std::map<std::vector<int>, std::int64_t> laplacian(const HarmonicPolynomial& f);

bool is_harmonic(const HarmonicPolynomial& f);

// The explicit basis Phi_s of homogeneous harmonic polynomials of degree s
// in d+1 variables. Monomial families come first, then difference
// families, each in lexicographic order of their index tuples.
std::vector<HarmonicPolynomial> phi_basis(int d, int s);

// dim Harm_{d+1}(s) = C(s+d, d) - C(s+d-2, d).
std::int64_t harm_dim(int d, int s);

// Column sum f(U) = sum_k f(u_k), accumulated with compensated summation in
// column order.
double evaluate_sum(const HarmonicPolynomial& f, const DesignMatrix& design);

struct VerificationReport {
  // Index 0 is unused; entries 1..t hold the largest absolute residual of
  // that degree. Degrees above the checked strength stay at zero.
  std::array<double, 4> max_residual_by_degree{};
  int checked_strength = 0;
  double norm_max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string worst_polynomial;
  double worst_residual = 0.0;
  // Every absolute residual, in check order.
  std::vector<double> residuals;
};

// Condition (*): unit column norms and f(U) = 0 for every f in
// Phi_1 u ... u Phi_t.
VerificationReport verify_design(const DesignMatrix& design, int strength,
                                 double tolerance);
VerificationReport verify_design(const DesignMatrix& design, int strength);

// Independent check through raw monomial moments: every monomial sum of
// degree <= t must match the sphere's moment (n/(d+1) for x_i^2, zero for
// everything else).
VerificationReport moment_check(const DesignMatrix& design, int strength,
                                double tolerance);
VerificationReport moment_check(const DesignMatrix& design, int strength);

}  // namespace sdesign
