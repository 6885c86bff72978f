#include "doctest.h"

#include <chrono>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sdesign/errors.hpp"
#include "sdesign/sidon.hpp"

using namespace sdesign;

namespace {

std::vector<int> reduced(std::vector<int> values, int n) {
  for (int& v : values) v = ((v % n) + n) % n;
  std::sort(values.begin(), values.end());
  return values;
}

// Residue sum of a witness, which must vanish mod n.
long long witness_sum(const SidonCheck& check) {
  long long total = 0;
  for (const SignedTerm& term : check.witness) total += term.sign * term.value;
  return total;
}

}  // namespace

TEST_CASE("is_sidon examples") {
  CHECK(is_sidon(std::vector<int>{1, 3}, 8, 3).ok);

  const SidonCheck a = is_sidon(std::vector<int>{1, 2}, 6, 3);
  CHECK_FALSE(a.ok);
  CHECK(a.witness == std::vector<SignedTerm>{{1, 1}, {1, 1}, {-1, 2}});

  const SidonCheck b = is_sidon(std::vector<int>{2}, 6, 3);
  CHECK_FALSE(b);
  CHECK(b.witness == std::vector<SignedTerm>{{1, 2}, {1, 2}, {1, 2}});

  CHECK(is_sidon(std::vector<int>{1, 3, 5}, 12, 3).ok);
}

TEST_CASE("is_sidon domain errors") {
  CHECK_THROWS_AS(is_sidon(std::vector<int>{0}, 6, 3), DomainError);
  CHECK_THROWS_AS(is_sidon(std::vector<int>{6}, 6, 3), DomainError);
  CHECK_THROWS_AS(is_sidon(std::vector<int>{1, 1}, 6, 3), DomainError);
  CHECK_THROWS_AS(is_sidon(std::vector<int>{1}, 1, 3), DomainError);
  CHECK_THROWS_AS(is_sidon(std::vector<int>{1}, 6, 4), DomainError);
  CHECK(is_sidon(std::vector<int>{}, 6, 3).ok);
}

TEST_CASE("is_sidon agrees with the coefficient-vector oracle on random sets") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const int t = 1 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % std::min(6, n - 1));
    std::vector<int> all = oracle::range(1, n - 1);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> s(all.begin(), all.begin() + k);
    std::sort(s.begin(), s.end());
    const SidonCheck check = is_sidon(s, n, t);
    CHECK(check.ok == oracle::is_sidon(s, n, t));
    if (!check.ok) {
      CHECK(witness_sum(check) % n == 0);
      CHECK(!check.witness.empty());
      CHECK(static_cast<int>(check.witness.size()) <= t);
      for (const SignedTerm& term : check.witness) {
        CHECK(std::find(s.begin(), s.end(), term.value) != s.end());
        for (const SignedTerm& other : check.witness) {
          CHECK_FALSE((other.value == term.value && other.sign != term.sign));
        }
      }
    }
  }
}

TEST_CASE("SidonSet re-checks its invariants") {
  const SidonSet s(12, 3, {1, 3, 5});
  CHECK(s.size() == 3);
  CHECK(s.prefix(2) == SidonSet(12, 3, {1, 3}));
  CHECK_THROWS_AS(SidonSet(6, 3, {1, 2}), DomainError);
  CHECK_THROWS_AS(SidonSet(12, 3, {3, 1}), DomainError);
  CHECK_THROWS_AS(s.prefix(4), DomainError);
}

TEST_CASE("lower_bound_size examples") {
  CHECK(lower_bound_size(12, 3) == 3);
  CHECK(lower_bound_size(25, 3) == 5);
  CHECK(lower_bound_size(9, 3) == 1);
  CHECK(lower_bound_size(11, 2) == 5);
  CHECK(lower_bound_size(11, 1) == 10);
  CHECK(lower_bound_size(35, 3) == 7);
  CHECK(lower_bound_size(2, 3) == 0);
  CHECK(lower_bound_size(3, 3) == 0);
  CHECK(smallest_divisor_5_mod_6(35) == 5);
  CHECK(smallest_divisor_5_mod_6(77) == 11);
  CHECK_FALSE(smallest_divisor_5_mod_6(21).has_value());
}

TEST_CASE("construct_bound_set examples") {
  CHECK(construct_bound_set(12, 3).elements() == std::vector<int>{1, 3, 5});
  CHECK(construct_bound_set(25, 3).elements() == std::vector<int>{1, 6, 11, 16, 21});
  CHECK(construct_bound_set(35, 3).elements() == std::vector<int>{1, 6, 11, 16, 21, 26, 31});
  CHECK(construct_bound_set(9, 3).elements() == std::vector<int>{1});
}

TEST_CASE("construct_bound_set is Sidon-type of the bound size for 2 <= n <= 500") {
  for (int n = 2; n <= 500; ++n) {
    for (int t = 1; t <= 3; ++t) {
      const SidonSet s = construct_bound_set(n, t);
      CHECK(s.size() == lower_bound_size(n, t));
      CHECK(is_sidon(s.elements(), n, t).ok);
      if (n <= 80 && t == 3) CHECK(oracle::is_sidon(s.elements(), n, t));
    }
  }
}

TEST_CASE("max_sidon_search examples") {
  const auto r5 = max_sidon_search(5, 3);
  CHECK(r5.max_cardinality == 1);
  CHECK(r5.witness.elements() == std::vector<int>{1});
  CHECK(r5.complete);

  const auto r8 = max_sidon_search(8, 3);
  CHECK(r8.max_cardinality == 2);
  CHECK(r8.witness.elements() == std::vector<int>{1, 3});

  const auto r12 = max_sidon_search(12, 3);
  CHECK(r12.max_cardinality == 3);
  CHECK(r12.matches_lower_bound);
  CHECK(r12.witness.elements() == std::vector<int>{1, 3, 5});

  for (int n = 2; n <= 30; ++n) {
    CHECK(max_sidon_search(n, 1).max_cardinality == n - 1);
    CHECK(max_sidon_search(n, 2).max_cardinality == (n - 1) / 2);
  }
  CHECK(max_sidon_search(2, 3).max_cardinality == 0);
  CHECK(max_sidon_search(2, 3).witness.size() == 0);
}

TEST_CASE("search matches the plain oracle over [1, (n-1)/2] for n <= 60") {
  for (int n = 2; n <= 60; ++n) {
    const int lb = lower_bound_size(n, 3);
    const auto search = max_sidon_search(n, 3);
    const auto naive = oracle::max_sidon(n, 3, oracle::range(1, (n - 1) / 2), lb + 1);
    CAPTURE(n);
    CHECK(search.complete);
    CHECK(search.max_cardinality == naive.size);
    CHECK(oracle::is_sidon(search.witness.elements(), n, 3));
    CHECK(search.witness.size() == search.max_cardinality);
  }
}

TEST_CASE("restricting to [1, (n-1)/2] loses nothing: full-range oracle") {
  for (int n = 2; n <= 30; ++n) {
    for (int t = 2; t <= 3; ++t) {
      if (t == 2 && n > 22) continue;  // the uncapped t = 2 oracle grows fast
      const auto search = max_sidon_search(n, t);
      const auto full = oracle::max_sidon(n, t, oracle::range(1, n - 1), n);
      CAPTURE(n);
      CAPTURE(t);
      CHECK(search.max_cardinality == full.size);
      // Lexicographically first maximum over the full range lies in the
      // lower half too, so it is the search witness.
      CHECK(search.witness.elements() ==
            oracle::lex_first_sidon(n, t, oracle::range(1, n - 1), full.size));
    }
  }
}

TEST_CASE("search witness is the lexicographically first maximum set (n <= 45)") {
  for (int n = 2; n <= 45; ++n) {
    const auto search = max_sidon_search(n, 3);
    CAPTURE(n);
    CHECK(search.witness.elements() ==
          oracle::lex_first_sidon(n, 3, oracle::range(1, (n - 1) / 2), search.max_cardinality));
  }
}

TEST_CASE("monotonicity: subsets of Sidon-type sets are Sidon-type") {
  std::mt19937_64 rng(17);
  for (int n = 5; n <= 60; n += 5) {
    const auto s = max_sidon_search(n, 3).witness.elements();
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> sub;
      for (int x : s) {
        if (rng() & 1) sub.push_back(x);
      }
      CHECK(is_sidon(sub, n, 3).ok);
    }
  }
}

TEST_CASE("dilation by a unit preserves the property") {
  for (int n = 4; n <= 60; ++n) {
    const auto s = construct_bound_set(n, 3).elements();
    for (int u = 1; u < n; ++u) {
      if (std::gcd(u, n) != 1) continue;
      std::vector<int> dilated;
      for (int x : s) dilated.push_back(x * u);
      CHECK(is_sidon(reduced(dilated, n), n, 3).ok);
    }
  }
}

TEST_CASE("strength nesting s(n,3) <= s(n,2) <= s(n,1)") {
  for (int n = 2; n <= 60; ++n) {
    const int s3 = max_sidon_search(n, 3).max_cardinality;
    const int s2 = max_sidon_search(n, 2).max_cardinality;
    const int s1 = max_sidon_search(n, 1).max_cardinality;
    CHECK(s3 <= s2);
    CHECK(s2 <= s1);
  }
}

TEST_CASE("exhausted budget is flagged, never reported as exact") {
  SearchBudget tiny;
  tiny.max_nodes = 5;
  const auto r = max_sidon_search(97, 3, tiny);
  CHECK_FALSE(r.complete);
  CHECK(r.max_cardinality <= lower_bound_size(97, 3));
  CHECK(is_sidon(r.witness.elements(), 97, 3).ok);

  SearchBudget no_time;
  no_time.max_time = std::chrono::milliseconds(0);
  CHECK_FALSE(max_sidon_search(113, 3, no_time).complete);

  const auto rows = bound_exactness_report(30, tiny, 2);
  CHECK(std::any_of(rows.begin(), rows.end(), [](const auto& row) { return !row.complete; }));
}

TEST_CASE("bound exactness report") {
  const auto small = bound_exactness_report(4);
  REQUIRE(small.size() == 3);
  CHECK(small[0].n == 2);
  CHECK(small[0].lower_bound == 0);
  CHECK(small[0].exact == 0);
  CHECK(small[1].n == 3);
  CHECK(small[1].exact == 0);
  CHECK(small[2].n == 4);
  CHECK(small[2].lower_bound == 1);
  CHECK(small[2].exact == 1);

  const auto rows = bound_exactness_report(20);
  for (const auto& row : rows) {
    CHECK(row.complete);
    CHECK(row.equal);
  }
  const auto parallel = bound_exactness_report(20, {}, 3);
  REQUIRE(parallel.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parallel[i].witness == rows[i].witness);
    CHECK(parallel[i].exact == rows[i].exact);
  }
}
