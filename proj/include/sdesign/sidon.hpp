#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sdesign {

// One summand eps * x of a signed sum, eps in {+1, -1}.
struct SignedTerm {
  int sign = 1;
  int value = 0;

  friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

struct SidonCheck {
  bool ok = true;
  // A non-trivial signed sum that vanishes mod n; empty when ok.
  std::vector<SignedTerm> witness;

  explicit operator bool() const noexcept { return ok; }
};

// True iff no non-trivial signed sum of at most t elements of `elements`
// (repetition allowed) is divisible by n. A sum is trivial when it is empty
// or some value appears in it with both signs.
//
// Throws DomainError if n < 2, t is not 1, 2 or 3, an element lies outside
// [1, n-1], or an element repeats.
SidonCheck is_sidon(std::span<const int> elements, int n, int t);

// A subset of Z_n (as integers in [1, n-1], strictly increasing) that is
// Sidon-type of the given strength. The constructor re-checks the property.
class SidonSet {
 public:
  SidonSet(int modulus, int strength, std::vector<int> elements);

  int modulus() const noexcept { return modulus_; }
  int strength() const noexcept { return strength_; }
  const std::vector<int>& elements() const noexcept { return elements_; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }

  // The first k elements, as a set of the same modulus and strength.
  SidonSet prefix(int k) const;

  friend bool operator==(const SidonSet&, const SidonSet&) = default;

 private:
  int modulus_;
  int strength_;
  std::vector<int> elements_;
};

// Size of the explicit construction: n-1 for t = 1, floor((n-1)/2) for
// t = 2; for t = 3, floor(n/4) when n is even, (p+1)n/(6p) when n is odd and
// p is its smallest divisor = 5 (mod 6), floor((n+1)/6) otherwise.
int lower_bound_size(int n, int t);

// Smallest divisor p of n with p = 5 (mod 6), if any.
std::optional<int> smallest_divisor_5_mod_6(int n);

// The set realising lower_bound_size(n, t).
SidonSet construct_bound_set(int n, int t);

struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::chrono::milliseconds> max_time;
};

struct SidonSearchResult {
  int modulus = 0;
  int strength = 0;
  // s(n, t) when complete; otherwise the best size found so far.
  int max_cardinality = 0;
  // Lexicographically smallest set of that size when complete.
  SidonSet witness;
  std::uint64_t nodes_explored = 0;
  bool matches_lower_bound = false;
  // False when the budget ran out: the result is not certified maximal.
  bool complete = true;
};

// Exact s(n, t) by exhaustive backtracking.
//
// Flipping the sign of one element of a set preserves the Sidon-type
// property for t >= 2, and such a set never holds both x and n-x, so for
// t >= 2 candidates are restricted to [1, (n-1)/2]. This loses neither the
// maximum nor the lexicographically smallest maximum witness. Pruning uses
// the count of admissible candidates left and the exact maxima of all
// candidate suffixes (computed from the back, largest candidate first).
SidonSearchResult max_sidon_search(int n, int t, SearchBudget budget = {});

struct ExactnessRow {
  int n = 0;
  int lower_bound = 0;
  int exact = 0;
  bool equal = false;
  bool complete = true;
  std::vector<int> witness;
  std::uint64_t nodes = 0;
};

// For 2 <= n <= n_max: exact s(n,3) against lower_bound_size(n,3). Rows are
// computed on up to `jobs` threads; the output does not depend on `jobs`.
std::vector<ExactnessRow> bound_exactness_report(int n_max, SearchBudget budget = {},
                                                int jobs = 1);

}  // namespace sdesign
