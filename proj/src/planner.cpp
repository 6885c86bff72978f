#include "sdesign/planner.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sdesign/compose.hpp"
#include "sdesign/errors.hpp"
#include "sdesign/harmonic.hpp"
#include "sdesign/regular.hpp"

namespace sdesign {
namespace {

void require_dimension(int d) {
  if (d < 1) throw DomainError(fmt::format("sphere dimension d = {} (need d >= 1)", d));
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

// n odd and n >= 5(d+1)/2, compared without rounding.
bool odd_size_large_enough(int d, int n) { return 2LL * n >= 5LL * (d + 1); }

bool excluded_odd_size(int d, int n) { return (d == 2 && n == 9) || (d == 4 && n == 13); }

Recipe regular_recipe(int d, int n, int strength, std::vector<int> elements) {
  // Fails loudly if the elements are not Sidon-type of this strength.
  const SidonSet checked(n, strength, elements);
  return Recipe{.kind = RecipeKind::Regular,
                .dimension = d,
                .size = n,
                .strength = strength,
                .modulus = n,
                .sidon_strength = strength,
                .sidon_elements = checked.elements()};
}

std::vector<int> odd_run(int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i) out.push_back(2 * i + 1);
  return out;
}

std::vector<int> initial_run(int count) {
  std::vector<int> out;
  for (int i = 1; i <= count; ++i) out.push_back(i);
  return out;
}

Recipe pentagon_recipe() { return regular_recipe(1, 5, 3, {1}); }

}  // namespace

std::string_view to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::ProvenInfeasible:
      return "infeasible";
    case FeasibilityStatus::Constructible:
      return "constructible";
    case FeasibilityStatus::Open:
      return "open";
  }
  return "?";
}

std::string_view to_string(RecipeKind kind) {
  switch (kind) {
    case RecipeKind::Octahedron:
      return "Octahedron";
    case RecipeKind::Regular:
      return "Regular";
    case RecipeKind::AntipodalLift:
      return "AntipodalLift";
    case RecipeKind::SplitMerge:
      return "SplitMerge";
    case RecipeKind::AntipodalMerge:
      return "AntipodalMerge";
    case RecipeKind::Double:
      return "Double";
  }
  return "?";
}

std::int64_t dgs_bound(int d, int t) {
  require_dimension(d);
  if (t < 1) throw DomainError(fmt::format("strength t = {} (need t >= 1)", t));
  return binomial(t / 2 + d, d) + binomial((t - 1) / 2 + d, d);
}

Feasibility classify(int d, int n) {
  require_dimension(d);
  const std::int64_t bound = dgs_bound(d, 3);
  if (n < bound) {
    return {FeasibilityStatus::ProvenInfeasible,
            fmt::format("n = {} is below the lower bound N_{}(3) = {}", n, d, bound), {}};
  }
  if (d == 1) {
    return {FeasibilityStatus::Constructible, "regular polygon with n >= 4 vertices", {}};
  }
  if (n % 2 == 0) {
    return {FeasibilityStatus::Constructible, fmt::format("even n >= 2d+2 = {}", bound), {}};
  }
  if (odd_size_large_enough(d, n) && !excluded_odd_size(d, n)) {
    return {FeasibilityStatus::Constructible, "odd n >= 5(d+1)/2", {}};
  }
  Feasibility open{FeasibilityStatus::Open,
                   excluded_odd_size(d, n)
                       ? fmt::format("open: no construction for this exceptional size "
                                     "(conjectured not to exist)")
                       : fmt::format("open: odd n below 5(d+1)/2 = {}/2 has no construction "
                                     "(conjectured not to exist)",
                                     5 * (d + 1)),
                   {}};
  if (d == 2 && n == 7) {
    open.note = "nonexistence of a 7-point 3-design on S^2 has been announced separately";
  }
  return open;
}

std::string Recipe::describe() const {
  switch (kind) {
    case RecipeKind::Octahedron:
      return fmt::format("Octahedron(d={})", dimension);
    case RecipeKind::Regular:
      return fmt::format("Regular(n={}, S={{{}}}, t={})", modulus, fmt::join(sidon_elements, ","),
                         strength);
    case RecipeKind::AntipodalLift:
      return fmt::format("AntipodalLift(d={}; A=[{}])", dimension, parts.at(0).describe());
    case RecipeKind::SplitMerge:
    case RecipeKind::AntipodalMerge:
      return fmt::format("{}(d1={}, d2={}, n1={}, n2={}; A=[{}]; C=[{}])", to_string(kind), d1,
                         d2, n1, n2, parts.at(0).describe(), parts.at(1).describe());
    case RecipeKind::Double:
      return fmt::format("Double(A=[{}])", parts.at(0).describe());
  }
  return "?";
}

Recipe plan(int d, int n) {
  const Feasibility f = classify(d, n);
  if (f.status != FeasibilityStatus::Constructible) {
    throw UsageError(fmt::format("no construction for d = {}, n = {}: {}", d, n, f.reason));
  }
  const bool n_even = n % 2 == 0;
  const bool d_odd = d % 2 == 1;

  if (n == 2 * d + 2) {
    return Recipe{.kind = RecipeKind::Octahedron, .dimension = d, .size = n};
  }
  if (n_even && d_odd) {
    // odd integers below n/2 are Sidon-type of strength 3 mod n
    return regular_recipe(d, n, 3, odd_run((d + 1) / 2));
  }
  if (n_even) {
    const int half = n / 2;
    Recipe a = regular_recipe(d - 1, half, 2, initial_run(d / 2));
    return Recipe{.kind = RecipeKind::AntipodalLift,
                  .dimension = d,
                  .size = n,
                  .parts = {std::move(a)}};
  }
  const int needed = (d + 1) / 2;
  if (d_odd && lower_bound_size(n, 3) >= needed) {
    return regular_recipe(d, n, 3, construct_bound_set(n, 3).prefix(needed).elements());
  }
  if (n >= 2 * d + 7) {
    if (d_odd) {
      const int n1 = n - 5;
      split_merge_coefficients(2, d - 1, n1, 5);
      return Recipe{.kind = RecipeKind::SplitMerge,
                    .dimension = d,
                    .size = n,
                    .d1 = 2,
                    .d2 = d - 1,
                    .n1 = n1,
                    .n2 = 5,
                    .parts = {regular_recipe(d, n1, 3, odd_run(needed)), pentagon_recipe()}};
    }
    const int n1 = (n - 5) / 2;
    antipodal_merge_coefficients(2, d - 2, n1, 5);
    return Recipe{.kind = RecipeKind::AntipodalMerge,
                  .dimension = d,
                  .size = n,
                  .d1 = 2,
                  .d2 = d - 2,
                  .n1 = n1,
                  .n2 = 5,
                  .parts = {regular_recipe(d - 1, n1, 2, initial_run(d / 2)), pentagon_recipe()}};
  }
  throw std::logic_error(
      fmt::format("internal error: ({}, {}) is constructible but no recipe applies", d, n));
}

DesignMatrix execute(const Recipe& recipe) {
  switch (recipe.kind) {
    case RecipeKind::Octahedron:
      return octahedron(recipe.dimension);
    case RecipeKind::Regular:
      return build_regular(
          SidonSet(recipe.modulus, recipe.sidon_strength, recipe.sidon_elements), recipe.strength);
    case RecipeKind::AntipodalLift:
      return lift_antipodal(execute(recipe.parts.at(0)));
    case RecipeKind::SplitMerge:
      return merge_split(execute(recipe.parts.at(0)), execute(recipe.parts.at(1)), recipe.d1,
                         recipe.d2);
    case RecipeKind::AntipodalMerge:
      return merge_antipodal(execute(recipe.parts.at(0)), execute(recipe.parts.at(1)), recipe.d1,
                             recipe.d2);
    case RecipeKind::Double:
      return double_antipodal(execute(recipe.parts.at(0)));
  }
  throw std::logic_error("unknown recipe kind");
}

DesignMatrix build(int d, int n) {
  const Recipe recipe = plan(d, n);
  DesignMatrix design = execute(recipe).with_provenance(recipe.describe());
  if (design.dimension() != d || design.size() != n) {
    throw std::logic_error(fmt::format("recipe {} produced a {}x{} matrix", recipe.describe(),
                                       design.dimension() + 1, design.size()));
  }
  const VerificationReport report = verify_design(design, 3);
  if (!report.passed) {
    throw std::logic_error(fmt::format("recipe {} failed verification (worst {:.3g} at {})",
                                       recipe.describe(), report.worst_residual,
                                       report.worst_polynomial));
  }
  return design;
}

int constructible_threshold(int d) {
  require_dimension(d);
  // 3d+10 lies above 5(d+1)/2 and above both exceptional sizes, so every
  // n >= 3d+10 is constructible; walk down from there.
  int n = 3 * d + 10;
  while (n - 1 >= 1 && classify(d, n - 1).status == FeasibilityStatus::Constructible) --n;
  return n;
}

std::vector<ResultsRow> results_table(int d_max, bool check) {
  if (d_max < 1) throw DomainError(fmt::format("d_max = {} (need >= 1)", d_max));
  std::vector<ResultsRow> rows;
  for (int d = 1; d <= d_max; ++d) {
    ResultsRow row;
    row.d = d;
    row.tight_size = dgs_bound(d, 3);
    const int limit = 3 * d + 10;
    row.all_from = limit + 1;
    for (int n = limit; n >= 1 && classify(d, n).status == FeasibilityStatus::Constructible; --n) {
      row.all_from = n;
    }
    std::vector<std::string> parts;
    for (int n = 1; n <= limit; ++n) {
      if (classify(d, n).status != FeasibilityStatus::Constructible) continue;
      if (n < row.all_from) {
        row.isolated_sizes.push_back(n);
        parts.push_back(std::to_string(n));
      }
      if (check) {
        ++row.checked;
        const DesignMatrix m = build(d, n);
        if (!verify_design(m, 3).passed || !moment_check(m, 3).passed) row.check_passed = false;
      }
    }
    parts.push_back(fmt::format("≥ {}", row.all_from));
    row.sizes_text = fmt::format("{}", fmt::join(parts, ", "));
    rows.push_back(std::move(row));
  }
  return rows;
}

int conjectured_m_prime(int d) {
  require_dimension(d);
  if (d == 2) return 10;
  if (d == 4) return 14;
  // largest even integer <= (5d + 6) / 2
  return 2 * ((5 * d + 6) / 4);
}

NonexistenceScan regular_nonexistence_scan(int d_max, SearchBudget budget, int jobs) {
  if (d_max < 3 || d_max % 2 == 0) {
    throw DomainError(fmt::format("d_max = {} must be odd and >= 3", d_max));
  }
  NonexistenceScan scan;
  std::vector<int> moduli;
  for (int d = 1; d <= d_max; d += 2) {
    for (int n = 2 * d + 3; !odd_size_large_enough(d, n); n += 2) {
      scan.entries.push_back(ScanEntry{.d = d, .n = n, .needed = (d + 1) / 2});
      moduli.push_back(n);
    }
  }
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());

  std::vector<SidonSearchResult> found(moduli.size(), SidonSearchResult{
                                                          .witness = SidonSet(2, 1, {}),
                                                      });
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < moduli.size(); i = next++) {
      found[i] = max_sidon_search(moduli[i], 3, budget);
    }
  };
  const int threads = std::clamp(jobs, 1, std::max(1, static_cast<int>(moduli.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (ScanEntry& e : scan.entries) {
    const auto it = std::lower_bound(moduli.begin(), moduli.end(), e.n);
    const SidonSearchResult& r = found[static_cast<std::size_t>(it - moduli.begin())];
    e.sidon_max = r.max_cardinality;
    e.complete = r.complete;
    e.counterexample = r.max_cardinality >= e.needed;
    scan.complete = scan.complete && e.complete;
    scan.any_counterexample = scan.any_counterexample || e.counterexample;
  }
  return scan;
}

}  // namespace sdesign
