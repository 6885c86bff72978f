#include "sdesign/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <fmt/format.h>

#include "sdesign/errors.hpp"

namespace sdesign {
namespace {

void require_dimension(int d) {
  if (d < 1) {
    throw DomainError(fmt::format("sphere dimension d = {} (need d >= 1)", d));
  }
}

void require_degree(int s) {
  if (s < 1 || s > 3) {
    throw UnsupportedDegreeError(
        fmt::format("harmonic degree {} unsupported (need 1, 2 or 3)", s));
  }
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

std::vector<int> unit_exponents(int variables, std::initializer_list<int> vars) {
  std::vector<int> e(static_cast<std::size_t>(variables), 0);
  for (int v : vars) ++e[static_cast<std::size_t>(v)];
  return e;
}

HarmonicPolynomial monomial(int variables, std::initializer_list<int> vars) {
  return HarmonicPolynomial({Term{1, unit_exponents(variables, vars)}});
}

std::string describe_monomial(const std::vector<int>& exponents) {
  std::string out;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += fmt::format("x{}", i);
    if (exponents[i] > 1) out += fmt::format("^{}", exponents[i]);
  }
  return out.empty() ? "1" : out;
}

double column_monomial(const Matrix& m, int col, const std::vector<int>& vars) {
  double p = 1.0;
  for (int v : vars) p *= m(v, col);
  return p;
}

}  // namespace

HarmonicPolynomial::HarmonicPolynomial(std::vector<Term> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw ShapeError("polynomial needs at least one term");
  }
  variables_ = static_cast<int>(terms_.front().exponents.size());
  degree_ = std::accumulate(terms_.front().exponents.begin(),
                            terms_.front().exponents.end(), 0);
  factors_.reserve(terms_.size());
  for (const Term& term : terms_) {
    if (static_cast<int>(term.exponents.size()) != variables_) {
      throw ShapeError("exponent vectors differ in length");
    }
    if (std::accumulate(term.exponents.begin(), term.exponents.end(), 0) !=
        degree_) {
      throw ShapeError("polynomial is not homogeneous");
    }
    std::vector<Factor> factors;
    for (int v = 0; v < variables_; ++v) {
      const int p = term.exponents[static_cast<std::size_t>(v)];
      if (p < 0) throw ShapeError("negative exponent");
      if (p > 0) factors.push_back({v, p});
    }
    factors_.push_back(std::move(factors));
  }
}

double HarmonicPolynomial::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != variables_) {
    throw ShapeError(fmt::format("point has {} coordinates, polynomial has {}",
                                 point.size(), variables_));
  }
  double value = 0.0;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    double p = terms_[t].coefficient;
    for (const Factor& f : factors_[t]) {
      for (int k = 0; k < f.power; ++k) p *= point[static_cast<std::size_t>(f.variable)];
    }
    value += p;
  }
  return value;
}

std::string HarmonicPolynomial::describe() const {
  std::string out;
  for (const Term& term : terms_) {
    const int c = term.coefficient;
    if (out.empty()) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (std::abs(c) != 1) out += fmt::format("{}*", std::abs(c));
    out += describe_monomial(term.exponents);
  }
  return out;
}

std::map<std::vector<int>, std::int64_t> laplacian(const HarmonicPolynomial& f) {
  std::map<std::vector<int>, std::int64_t> result;
  for (const Term& term : f.terms()) {
    for (std::size_t v = 0; v < term.exponents.size(); ++v) {
      const int p = term.exponents[v];
      if (p < 2) continue;
      std::vector<int> e = term.exponents;
      e[v] -= 2;
      result[e] += static_cast<std::int64_t>(term.coefficient) * p * (p - 1);
    }
  }
  std::erase_if(result, [](const auto& kv) { return kv.second == 0; });
  return result;
}

bool is_harmonic(const HarmonicPolynomial& f) { return laplacian(f).empty(); }

std::vector<HarmonicPolynomial> phi_basis(int d, int s) {
  require_dimension(d);
  require_degree(s);
  const int nv = d + 1;
  std::vector<HarmonicPolynomial> basis;
  basis.reserve(static_cast<std::size_t>(harm_dim(d, s)));
  switch (s) {
    case 1:
      for (int i = 0; i < nv; ++i) basis.push_back(monomial(nv, {i}));
      break;
    case 2:
      for (int i = 0; i < nv; ++i) {
        for (int j = i + 1; j < nv; ++j) basis.push_back(monomial(nv, {i, j}));
      }
      for (int i = 0; i + 1 < nv; ++i) {
        basis.emplace_back(std::vector<Term>{
            {1, unit_exponents(nv, {i, i})},
            {-1, unit_exponents(nv, {i + 1, i + 1})}});
      }
      break;
    case 3:
      for (int i = 0; i < nv; ++i) {
        for (int j = i + 1; j < nv; ++j) {
          for (int k = j + 1; k < nv; ++k) basis.push_back(monomial(nv, {i, j, k}));
        }
      }
      for (int i = 0; i < nv; ++i) {
        for (int j = 0; j < nv; ++j) {
          if (i == j) continue;
          basis.emplace_back(std::vector<Term>{
              {1, unit_exponents(nv, {i, i, i})},
              {-3, unit_exponents(nv, {i, j, j})}});
        }
      }
      break;
  }
  return basis;
}

std::int64_t harm_dim(int d, int s) {
  require_dimension(d);
  require_degree(s);
  return binomial(s + d, d) - binomial(s + d - 2, d);
}

namespace {

std::vector<std::vector<double>> columns_of(const Matrix& m) {
  std::vector<std::vector<double>> cols(static_cast<std::size_t>(m.cols()),
                                        std::vector<double>(static_cast<std::size_t>(m.rows())));
  for (int r = 0; r < m.rows(); ++r) {
    for (int k = 0; k < m.cols(); ++k) {
      cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] = m(r, k);
    }
  }
  return cols;
}

double sum_over_columns(const HarmonicPolynomial& f,
                        const std::vector<std::vector<double>>& cols) {
  CompensatedSum sum;
  for (const auto& point : cols) sum.add(f.evaluate(point));
  return sum.value();
}

}  // namespace

double evaluate_sum(const HarmonicPolynomial& f, const DesignMatrix& design) {
  if (f.variables() != design.dimension() + 1) {
    throw ShapeError(fmt::format(
        "polynomial in {} variables applied to points in R^{}", f.variables(),
        design.dimension() + 1));
  }
  return sum_over_columns(f, columns_of(design.points()));
}

namespace {

double max_norm_deviation(const DesignMatrix& design) {
  double dev = 0.0;
  for (int k = 0; k < design.size(); ++k) {
    dev = std::max(dev, std::abs(design.column_norm_squared(k) - 1.0));
  }
  return dev;
}

void record(VerificationReport& report, int degree, double residual,
            const std::string& label) {
  report.residuals.push_back(residual);
  double& slot = report.max_residual_by_degree[static_cast<std::size_t>(degree)];
  slot = std::max(slot, residual);
  if (report.worst_polynomial.empty() || residual > report.worst_residual) {
    report.worst_residual = residual;
    report.worst_polynomial = label;
  }
}

void finish(VerificationReport& report) {
  report.passed = report.norm_max_deviation <= report.tolerance;
  for (double r : report.residuals) {
    if (!(r <= report.tolerance)) report.passed = false;
  }
}

}  // namespace

VerificationReport verify_design(const DesignMatrix& design, int strength,
                                 double tolerance) {
  require_degree(strength);
  VerificationReport report;
  report.checked_strength = strength;
  report.tolerance = tolerance;
  report.norm_max_deviation = max_norm_deviation(design);
  const auto cols = columns_of(design.points());
  for (int s = 1; s <= strength; ++s) {
    for (const HarmonicPolynomial& f : phi_basis(design.dimension(), s)) {
      const double r = std::abs(sum_over_columns(f, cols));
      // describe() is comparatively slow; only build labels that can win.
      const bool wins = report.worst_polynomial.empty() || r > report.worst_residual;
      record(report, s, r, wins ? f.describe() : std::string{});
    }
  }
  finish(report);
  return report;
}

VerificationReport verify_design(const DesignMatrix& design, int strength) {
  return verify_design(design, strength, default_tolerance(design.size()));
}

VerificationReport moment_check(const DesignMatrix& design, int strength,
                                double tolerance) {
  require_degree(strength);
  VerificationReport report;
  report.checked_strength = strength;
  report.tolerance = tolerance;
  report.norm_max_deviation = max_norm_deviation(design);

  const Matrix& m = design.points();
  const int nv = m.rows();
  const double second_moment =
      static_cast<double>(design.size()) / static_cast<double>(nv);

  auto check = [&](const std::vector<int>& vars) {
    CompensatedSum sum;
    for (int k = 0; k < m.cols(); ++k) sum.add(column_monomial(m, k, vars));
    const bool diagonal_square = vars.size() == 2 && vars[0] == vars[1];
    const double expected = diagonal_square ? second_moment : 0.0;
    const double r = std::abs(sum.value() - expected);
    const int degree = static_cast<int>(vars.size());
    const bool wins = report.worst_polynomial.empty() || r > report.worst_residual;
    std::string label;
    if (wins) {
      std::vector<int> e(static_cast<std::size_t>(nv), 0);
      for (int v : vars) ++e[static_cast<std::size_t>(v)];
      label = describe_monomial(e);
    }
    record(report, degree, r, label);
  };

  for (int i = 0; i < nv; ++i) check({i});
  if (strength >= 2) {
    for (int i = 0; i < nv; ++i) {
      for (int j = i; j < nv; ++j) check({i, j});
    }
  }
  if (strength >= 3) {
    for (int i = 0; i < nv; ++i) {
      for (int j = i; j < nv; ++j) {
        for (int k = j; k < nv; ++k) check({i, j, k});
      }
    }
  }
  finish(report);
  return report;
}

VerificationReport moment_check(const DesignMatrix& design, int strength) {
  return moment_check(design, strength, default_tolerance(design.size()));
}

}  // namespace sdesign
