#pragma once

#include <array>
#include <vector>

#include "sdesign/design_matrix.hpp"
#include "sdesign/sidon.hpp"

namespace sdesign {

struct TrigRows {
  std::vector<double> sine;    // sin(2*pi*k*m/n), k = 1..n
  std::vector<double> cosine;  // cos(2*pi*k*m/n), k = 1..n
};

// The frequency-m rows. k*m is reduced mod n before the angle is formed.
// Throws DomainError when m = 0 (mod n) or n < 2.
TrigRows trig_rows(int m, int n);

// Regular design: rows s(m_1), c(m_1), ..., s(m_e), c(m_e) scaled by
// sqrt(2/(d+1)) with d = 2e-1. Lies on S^d and has strength `strength` when
// the set's own strength is at least that.
//
// Throws PreconditionError if set.strength() < strength or the set is empty.
DesignMatrix build_regular(const SidonSet& set, int strength);

}  // namespace sdesign
