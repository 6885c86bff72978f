#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sdesign/design_matrix.hpp"
#include "sdesign/sidon.hpp"

namespace sdesign {

enum class FeasibilityStatus { ProvenInfeasible, Constructible, Open };

std::string_view to_string(FeasibilityStatus status);

struct Feasibility {
  FeasibilityStatus status = FeasibilityStatus::Open;
  std::string reason;
  // Extra remark that does not change the status (e.g. nonexistence results
  // proved elsewhere).
  std::string note;
};

// Delsarte-Goethals-Seidel bound
// N_d(t) = C(floor(t/2)+d, d) + C(floor((t-1)/2)+d, d).
std::int64_t dgs_bound(int d, int t);

// Status of 3-designs of size n on S^d. Nonexistence is proved only below
// 2d+2; sizes neither below the bound nor covered by a construction are
// Open.
Feasibility classify(int d, int n);

enum class RecipeKind { Octahedron, Regular, AntipodalLift, SplitMerge, AntipodalMerge, Double };

std::string_view to_string(RecipeKind kind);

// How to build one design. `parts` holds the sub-recipes: A, then C for
// the merges.
struct Recipe {
  RecipeKind kind = RecipeKind::Octahedron;
  int dimension = 0;
  int size = 0;
  int strength = 3;
  // Regular
  int modulus = 0;
  int sidon_strength = 0;
  std::vector<int> sidon_elements;
  // Merges
  int d1 = 0;
  int d2 = 0;
  int n1 = 0;
  int n2 = 0;
  std::vector<Recipe> parts;

  std::string describe() const;
};

// Deterministic recipe for a Constructible (d, n). Throws UsageError
// otherwise.
Recipe plan(int d, int n);

// Runs a recipe (recursively) through the constructions.
DesignMatrix execute(const Recipe& recipe);

// plan + execute + verification at strength 3; the design carries the
// recipe as provenance.
DesignMatrix build(int d, int n);

struct ResultsRow {
  int d = 0;
  std::int64_t tight_size = 0;         // N_d(3)
  std::vector<int> isolated_sizes;     // constructible sizes below all_from
  int all_from = 0;                    // every n >= all_from is constructible
  std::string sizes_text;              // e.g. "6, 8, ≥ 10"
  int checked = 0;                     // designs built and verified (check mode)
  bool check_passed = true;
};

// One row per d in [1, d_max], classifying n <= 3d+10. With `check` every
// constructible size in that window is built and verified.
std::vector<ResultsRow> results_table(int d_max, bool check = false);

// Smallest m with classify(d, n) Constructible for every n >= m.
int constructible_threshold(int d);

// Conjectured M'_d(3): 10 for d = 2, 14 for d = 4, otherwise the largest
// even integer not above 5d/2 + 3.
int conjectured_m_prime(int d);

struct ScanEntry {
  int d = 0;
  int n = 0;
  int needed = 0;      // (d+1)/2 elements for a regular design on S^d
  int sidon_max = 0;   // s(n, 3)
  bool complete = true;
  bool counterexample = false;
};

struct NonexistenceScan {
  std::vector<ScanEntry> entries;
  bool complete = true;
  bool any_counterexample = false;
};

// For odd d <= d_max and odd n with 2d+2 <= n < 5(d+1)/2: confirms by
// exhaustive search that s(n,3) < (d+1)/2, i.e. no regular 3-design of that
// size exists. Throws DomainError unless d_max is odd and >= 3.
NonexistenceScan regular_nonexistence_scan(int d_max, SearchBudget budget = {}, int jobs = 1);

}  // namespace sdesign
