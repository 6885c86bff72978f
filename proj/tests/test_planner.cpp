#include "doctest.h"

#include "oracles.hpp"
#include "sdesign/errors.hpp"
#include "sdesign/harmonic.hpp"
#include "sdesign/planner.hpp"

using namespace sdesign;

TEST_CASE("dgs_bound examples") {
  CHECK(dgs_bound(2, 3) == 6);
  CHECK(dgs_bound(23, 11) == 196560);
  for (int d = 1; d <= 40; ++d) {
    CHECK(dgs_bound(d, 1) == 2);
    CHECK(dgs_bound(d, 3) == 2 * d + 2);
    CHECK(dgs_bound(d, 2) == d + 2);
  }
  CHECK_THROWS_AS(dgs_bound(0, 3), DomainError);
}

TEST_CASE("classify examples") {
  CHECK(classify(3, 7).status == FeasibilityStatus::ProvenInfeasible);
  CHECK(classify(3, 7).reason.find("N_3(3) = 8") != std::string::npos);
  CHECK(classify(2, 9).status == FeasibilityStatus::Open);
  CHECK(classify(4, 13).status == FeasibilityStatus::Open);
  CHECK(classify(5, 15).status == FeasibilityStatus::Constructible);
  CHECK(classify(9, 23).status == FeasibilityStatus::Open);
  CHECK(classify(2, 7).status == FeasibilityStatus::Open);
  CHECK_FALSE(classify(2, 7).note.empty());
  CHECK(classify(1, 5).status == FeasibilityStatus::Constructible);
  CHECK(to_string(FeasibilityStatus::Open) == "open");
}

TEST_CASE("classify invariants") {
  for (int d = 1; d <= 40; ++d) {
    for (int n = 1; n <= 6 * d + 20; ++n) {
      const Feasibility f = classify(d, n);
      CHECK((f.status == FeasibilityStatus::ProvenInfeasible) == (n < dgs_bound(d, 3)));
      if (n % 2 == 0 && n >= 2 * d + 2) CHECK(f.status == FeasibilityStatus::Constructible);
      if (n % 2 == 1 && 2 * n >= 5 * (d + 1) && !(d == 2 && n == 9) && !(d == 4 && n == 13)) {
        CHECK(f.status == FeasibilityStatus::Constructible);
      }
    }
  }
}

TEST_CASE("plan examples") {
  CHECK(plan(4, 10).kind == RecipeKind::Octahedron);

  const Recipe r311 = plan(3, 11);
  CHECK(r311.kind == RecipeKind::Regular);
  CHECK(r311.modulus == 11);
  CHECK(r311.sidon_elements == std::vector<int>{1, 3});

  const Recipe r721 = plan(7, 21);
  CHECK(r721.kind == RecipeKind::SplitMerge);
  CHECK(r721.d1 == 2);
  CHECK(r721.d2 == 6);
  CHECK(r721.n1 == 16);
  CHECK(r721.n2 == 5);

  const Recipe r619 = plan(6, 19);
  CHECK(r619.kind == RecipeKind::AntipodalMerge);
  CHECK(r619.d1 == 2);
  CHECK(r619.d2 == 4);
  CHECK(r619.n1 == 7);
  CHECK(r619.n2 == 5);

  CHECK_THROWS_AS(plan(2, 9), UsageError);
  CHECK_THROWS_AS(plan(3, 6), UsageError);
}

TEST_CASE("build examples") {
  const DesignMatrix d28 = build(2, 8);
  CHECK(plan(2, 8).kind == RecipeKind::AntipodalLift);
  CHECK(plan(2, 8).parts.at(0).modulus == 4);
  CHECK(d28.size() == 8);
  CHECK(d28.provenance() == "AntipodalLift(d=2; A=[Regular(n=4, S={1}, t=2)])");

  const DesignMatrix d515 = build(5, 15);
  CHECK(plan(5, 15).kind == RecipeKind::Regular);
  CHECK(plan(5, 15).sidon_elements == std::vector<int>{1, 6, 11});
  CHECK(verify_design(d515, 3).passed);

  const DesignMatrix square = build(1, 4);
  CHECK(square.size() == 4);
  CHECK(square(0, 0) == 1.0);
  CHECK(square(1, 1) == 1.0);
}

TEST_CASE("construction sweep d <= 12") {
  for (int d = 1; d <= 12; ++d) {
    for (int n = 2 * d + 2; n <= 5 * d + 15; ++n) {
      if (classify(d, n).status != FeasibilityStatus::Constructible) continue;
      CAPTURE(d);
      CAPTURE(n);
      Recipe recipe;
      REQUIRE_NOTHROW(recipe = plan(d, n));
      CHECK(recipe.dimension == d);
      CHECK(recipe.size == n);
      const DesignMatrix u = build(d, n);
      CHECK(u.dimension() == d);
      CHECK(u.size() == n);
      CHECK(verify_design(u, 3, 1e-9 * n).passed);
      CHECK(moment_check(u, 3, 1e-9 * n).passed);
      CHECK(oracle::gram_defect(u, 3) < 1e-12);
    }
  }
}

TEST_CASE("results table reproduces the known rows") {
  const std::vector<std::string> expected = {
      "≥ 4",          "6, 8, ≥ 10",   "8, ≥ 10",      "10, 12, ≥ 14", "12, ≥ 14",
      "14, 16, ≥ 18", "16, 18, ≥ 20", "18, 20, ≥ 22", "20, 22, ≥ 24"};
  const auto rows = results_table(9);
  REQUIRE(rows.size() == 9);
  for (int d = 1; d <= 9; ++d) {
    const ResultsRow& row = rows[static_cast<std::size_t>(d - 1)];
    CHECK(row.d == d);
    CHECK(row.tight_size == 2 * d + 2);
    CHECK(row.sizes_text == expected[static_cast<std::size_t>(d - 1)]);
  }
  const auto checked = results_table(4, true);
  for (const auto& row : checked) {
    CHECK(row.check_passed);
    CHECK(row.checked > 0);
  }
}

TEST_CASE("conjectured threshold matches the constructive threshold") {
  CHECK(conjectured_m_prime(3) == 10);
  CHECK(conjectured_m_prime(2) == 10);
  CHECK(conjectured_m_prime(5) == 14);
  for (int d = 1; d <= 60; ++d) {
    CAPTURE(d);
    CHECK(constructible_threshold(d) == conjectured_m_prime(d));
  }
}

TEST_CASE("regular nonexistence scan") {
  const NonexistenceScan scan = regular_nonexistence_scan(7);
  CHECK(scan.complete);
  CHECK_FALSE(scan.any_counterexample);
  bool saw9 = false;
  bool saw13 = false;
  for (const ScanEntry& e : scan.entries) {
    CHECK(e.d % 2 == 1);
    CHECK(e.n % 2 == 1);
    CHECK(e.n >= 2 * e.d + 2);
    CHECK(2 * e.n < 5 * (e.d + 1));
    CHECK(e.sidon_max < e.needed);
    if (e.d == 3 && e.n == 9) {
      saw9 = true;
      CHECK(e.sidon_max == 1);
      CHECK(e.needed == 2);
    }
    if (e.d == 5 && e.n == 13) {
      saw13 = true;
      CHECK(e.sidon_max == 2);
      CHECK(e.needed == 3);
    }
  }
  CHECK(saw9);
  CHECK(saw13);
  CHECK_THROWS_AS(regular_nonexistence_scan(8), DomainError);
  CHECK_THROWS_AS(regular_nonexistence_scan(1), DomainError);
}
