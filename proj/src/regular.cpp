#include "sdesign/regular.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sdesign/errors.hpp"

namespace sdesign {
namespace {

struct SinCos {
  double sin;
  double cos;
};

// sin and cos of 2*pi*step/n, step in [0, n). The angle is folded into
// [0, pi/4] with integer arithmetic so that symmetric angles give
// bit-identical magnitudes and multiples of pi/2 give exact 0 and +-1.
SinCos unit_circle(long long step, long long n) {
  const long long quadrant = (4 * step) / n;
  long long rest = 4 * step - quadrant * n;  // angle within quadrant: (pi/2) * rest / n
  bool swap = false;
  if (2 * rest > n) {
    rest = n - rest;
    swap = true;
  }
  const double theta = (std::numbers::pi / 2.0) * static_cast<double>(rest) / static_cast<double>(n);
  double s = std::sin(theta);
  double c = std::cos(theta);
  if (swap) std::swap(s, c);
  switch (quadrant) {
    case 0:
      return {s, c};
    case 1:
      return {c, -s};
    case 2:
      return {-s, -c};
    default:
      return {-c, s};
  }
}

}  // namespace

TrigRows trig_rows(int m, int n) {
  if (n < 2) throw DomainError(fmt::format("modulus n = {} (need n >= 2)", n));
  const long long reduced = ((static_cast<long long>(m) % n) + n) % n;
  if (reduced == 0) {
    throw DomainError(fmt::format("frequency {} is 0 mod {}", m, n));
  }
  TrigRows rows;
  rows.sine.reserve(static_cast<std::size_t>(n));
  rows.cosine.reserve(static_cast<std::size_t>(n));
  for (long long k = 1; k <= n; ++k) {
    const long long step = (k * reduced) % n;
    const SinCos v = unit_circle(step, n);
    rows.sine.push_back(v.sin);
    rows.cosine.push_back(v.cos);
  }
  return rows;
}

DesignMatrix build_regular(const SidonSet& set, int strength) {
  if (strength < 1 || strength > 3) {
    throw DomainError(fmt::format("strength {} outside {{1,2,3}}", strength));
  }
  if (set.strength() < strength) {
    throw PreconditionError(fmt::format(
        "Sidon set of strength {} cannot give a regular design of strength {}",
        set.strength(), strength));
  }
  if (set.size() == 0) throw PreconditionError("regular design needs a non-empty set");

  const int n = set.modulus();
  const int e = set.size();
  const double scale = std::sqrt(1.0 / e);  // sqrt(2/(d+1)) with d = 2e-1
  Matrix points(2 * e, n);
  for (int j = 0; j < e; ++j) {
    const TrigRows rows = trig_rows(set.elements()[static_cast<std::size_t>(j)], n);
    for (int k = 0; k < n; ++k) {
      points(2 * j, k) = scale * rows.sine[static_cast<std::size_t>(k)];
      points(2 * j + 1, k) = scale * rows.cosine[static_cast<std::size_t>(k)];
    }
  }
  return DesignMatrix(std::move(points), strength,
                      fmt::format("Regular(n={}, S={{{}}}, t={})", n,
                                  fmt::join(set.elements(), ","), strength));
}

}  // namespace sdesign
