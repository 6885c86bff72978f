#include "sdesign/sidon.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>
#include <utility>

#include <fmt/format.h>

#include "sdesign/errors.hpp"

namespace sdesign {
namespace {

void require_modulus(int n) {
  if (n < 2) throw DomainError(fmt::format("modulus n = {} (need n >= 2)", n));
}

void require_strength(int t) {
  if (t < 1 || t > 3) {
    throw DomainError(fmt::format("strength t = {} unsupported (need 1, 2 or 3)", t));
  }
}

bool divides(int n, long long x) { return x % n == 0; }

}  // namespace

SidonCheck is_sidon(std::span<const int> elements, int n, int t) {
  require_modulus(n);
  require_strength(t);
  std::vector<int> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1 || sorted[i] > n - 1) {
      throw DomainError(fmt::format("element {} outside [1, {}]", sorted[i], n - 1));
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw DomainError(fmt::format("element {} repeated", sorted[i]));
    }
  }

  auto fail = [](std::vector<SignedTerm> w) { return SidonCheck{false, std::move(w)}; };

  for (int a : sorted) {
    if (divides(n, a)) return fail({{1, a}});
  }
  if (t == 1) return {};

  for (int a : sorted) {
    for (int b : sorted) {
      if (b < a) continue;
      if (divides(n, static_cast<long long>(a) + b)) return fail({{1, a}, {1, b}});
    }
  }
  for (int a : sorted) {
    for (int b : sorted) {
      if (a != b && divides(n, static_cast<long long>(a) - b)) return fail({{1, a}, {-1, b}});
    }
  }
  if (t == 2) return {};

  for (int a : sorted) {
    for (int b : sorted) {
      if (b < a) continue;
      for (int c : sorted) {
        if (c == a || c == b) continue;
        if (divides(n, static_cast<long long>(a) + b - c)) {
          return fail({{1, a}, {1, b}, {-1, c}});
        }
      }
    }
  }
  for (int a : sorted) {
    for (int b : sorted) {
      if (b < a) continue;
      for (int c : sorted) {
        if (c < b) continue;
        if (divides(n, static_cast<long long>(a) + b + c)) {
          return fail({{1, a}, {1, b}, {1, c}});
        }
      }
    }
  }
  return {};
}

SidonSet::SidonSet(int modulus, int strength, std::vector<int> elements)
    : modulus_(modulus), strength_(strength), elements_(std::move(elements)) {
  if (!std::is_sorted(elements_.begin(), elements_.end())) {
    throw DomainError("Sidon set elements must be increasing");
  }
  const SidonCheck check = is_sidon(elements_, modulus_, strength_);
  if (!check) {
    std::string sum;
    for (const SignedTerm& term : check.witness) {
      sum += fmt::format("{}{}", term.sign < 0 ? "-" : (sum.empty() ? "" : "+"), term.value);
    }
    throw DomainError(fmt::format("not Sidon-type of strength {} mod {}: {} = 0",
                                  strength_, modulus_, sum));
  }
}

SidonSet SidonSet::prefix(int k) const {
  if (k < 0 || k > size()) {
    throw DomainError(fmt::format("prefix length {} outside [0, {}]", k, size()));
  }
  return SidonSet(modulus_, strength_,
                  std::vector<int>(elements_.begin(), elements_.begin() + k));
}

std::optional<int> smallest_divisor_5_mod_6(int n) {
  for (int p = 5; p <= n; p += 6) {
    if (n % p == 0) return p;
  }
  return std::nullopt;
}

int lower_bound_size(int n, int t) {
  require_modulus(n);
  require_strength(t);
  switch (t) {
    case 1:
      return n - 1;
    case 2:
      return (n - 1) / 2;
    default:
      if (n % 2 == 0) return n / 4;
      if (auto p = smallest_divisor_5_mod_6(n)) return (*p + 1) * (n / *p) / 6;
      return (n + 1) / 6;
  }
}

SidonSet construct_bound_set(int n, int t) {
  require_modulus(n);
  require_strength(t);
  std::vector<int> elements;
  if (t == 1) {
    for (int x = 1; x < n; ++x) elements.push_back(x);
  } else if (t == 2) {
    for (int x = 1; x <= (n - 1) / 2; ++x) elements.push_back(x);
  } else if (n % 2 == 0) {
    for (int x = 1; 2 * x < n; x += 2) elements.push_back(x);
  } else if (auto p = smallest_divisor_5_mod_6(n)) {
    const int q = (*p - 5) / 6;
    for (int a = 0; a < n / *p; ++a) {
      for (int b = 0; b <= q; ++b) elements.push_back(a * *p + 2 * b + 1);
    }
  } else {
    for (int x = 1; 3 * x < n; x += 2) elements.push_back(x);
  }
  return SidonSet(n, t, std::move(elements));
}

namespace {

// Residues of Z_n as a bitset; bit r set means r is forbidden.
class ResidueSet {
 public:
  explicit ResidueSet(int n) : words_(static_cast<std::size_t>((n + 63) / 64), 0) {}

  void set(int r) { words_[static_cast<std::size_t>(r >> 6)] |= std::uint64_t{1} << (r & 63); }
  bool test(int r) const {
    return (words_[static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1U;
  }

  // Number of clear bits in [from, last].
  int count_clear(int from, int last) const {
    if (from > last) return 0;
    int forbidden = 0;
    const int first_word = from >> 6;
    const int last_word = last >> 6;
    for (int w = first_word; w <= last_word; ++w) {
      std::uint64_t bits = words_[static_cast<std::size_t>(w)];
      if (w == first_word) bits &= ~std::uint64_t{0} << (from & 63);
      if (w == last_word && (last & 63) != 63) {
        bits &= (std::uint64_t{1} << ((last & 63) + 1)) - 1;
      }
      forbidden += std::popcount(bits);
    }
    return last - from + 1 - forbidden;
  }

  // Smallest clear bit in [from, last], or last + 1.
  int next_clear(int from, int last) const {
    for (int w = from >> 6; w <= (last >> 6); ++w) {
      std::uint64_t free = ~words_[static_cast<std::size_t>(w)];
      if (w == (from >> 6)) free &= ~std::uint64_t{0} << (from & 63);
      if (free != 0) {
        const int r = (w << 6) + std::countr_zero(free);
        return std::min(r, last + 1);
      }
    }
    return last + 1;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct BudgetExhausted {};

class Searcher {
 public:
  Searcher(int n, int t, SearchBudget budget)
      : n_(n),
        t_(t),
        last_(t >= 2 ? (n - 1) / 2 : n - 1),
        budget_(budget),
        start_(std::chrono::steady_clock::now()),
        suffix_max_(static_cast<std::size_t>(last_ + 2), 0),
        root_(n) {
    root_.set(0);
    for (int y = 1; y < n_; ++y) {
      const long long ly = y;
      if (t_ >= 2 && divides(n_, 2 * ly)) root_.set(y);
      if (t_ >= 3 && divides(n_, 3 * ly)) root_.set(y);
    }
    levels_.assign(static_cast<std::size_t>(last_ + 2), root_);
  }

  SidonSearchResult run() {
    SidonSearchResult result{
        .modulus = n_,
        .strength = t_,
        .max_cardinality = 0,
        .witness = SidonSet(n_, t_, {}),
        .nodes_explored = 0,
        .matches_lower_bound = false,
        .complete = true,
    };
    try {
      // Exact maximum inside every candidate suffix [i, last].
      for (int i = last_; i >= 1; --i) {
        const int below = suffix_max_[static_cast<std::size_t>(i + 1)];
        suffix_max_[static_cast<std::size_t>(i)] = below;
        if (root_.test(i)) continue;
        target_ = below + 1;
        current_.clear();
        if (extend_with(i, root_, 0)) suffix_max_[static_cast<std::size_t>(i)] = target_;
      }
      // The first set of maximum size met in increasing order is the
      // lexicographically smallest one.
      target_ = suffix_max_[1];
      current_.clear();
      if (target_ > 0) search(1, root_, 0);
      best_ = found_;
    } catch (const BudgetExhausted&) {
      result.complete = false;
    }
    result.max_cardinality = static_cast<int>(best_.size());
    result.witness = SidonSet(n_, t_, best_);
    result.nodes_explored = nodes_;
    result.matches_lower_bound = result.max_cardinality == lower_bound_size(n_, t_);
    return result;
  }

 private:
  int mod(long long x) const {
    const long long r = x % n_;
    return static_cast<int>(r < 0 ? r + n_ : r);
  }

  void forbid_pm(ResidueSet& s, long long x) const {
    s.set(mod(x));
    s.set(mod(-x));
  }

  // Residues y that may no longer join once x joins current_.
  void add_element(ResidueSet& s, int x) const {
    s.set(x);
    if (t_ < 2) return;
    forbid_pm(s, x);
    if (t_ < 3) return;
    forbid_pm(s, 2LL * x);
    // 2y = +-x (mod n)
    for (long long rhs : {static_cast<long long>(x), static_cast<long long>(n_ - x)}) {
      if (n_ % 2 == 1) {
        s.set(mod(rhs % 2 == 0 ? rhs / 2 : (rhs + n_) / 2));
      } else if (rhs % 2 == 0) {
        s.set(mod(rhs / 2));
        s.set(mod(rhs / 2 + n_ / 2));
      }
    }
    for (int a : current_) {
      forbid_pm(s, static_cast<long long>(x) + a);
      forbid_pm(s, static_cast<long long>(x) - a);
    }
  }

  void tick() {
    ++nodes_;
    if (budget_.max_nodes && nodes_ > *budget_.max_nodes) throw BudgetExhausted{};
    if (budget_.max_time && (nodes_ & 0xFFF) == 0 &&
        std::chrono::steady_clock::now() - start_ > *budget_.max_time) {
      throw BudgetExhausted{};
    }
  }

  bool extend_with(int x, const ResidueSet& parent, int depth) {
    ResidueSet& level = levels_[static_cast<std::size_t>(depth)];
    level = parent;
    add_element(level, x);
    current_.push_back(x);
    if (current_.size() > best_.size()) best_ = current_;
    const bool hit = search(x + 1, level, depth + 1);
    current_.pop_back();
    return hit;
  }

  bool search(int from, const ResidueSet& forbidden, int depth) {
    tick();
    const int have = static_cast<int>(current_.size());
    if (have >= target_) {
      found_ = current_;
      return true;
    }
    for (int y = forbidden.next_clear(from, last_); y <= last_;
         y = forbidden.next_clear(y + 1, last_)) {
      if (have + suffix_max_[static_cast<std::size_t>(y)] < target_) return false;
      if (have + forbidden.count_clear(y, last_) < target_) return false;
      if (extend_with(y, forbidden, depth)) return true;
    }
    return false;
  }

  int n_;
  int t_;
  int last_;
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<int> suffix_max_;
  ResidueSet root_;
  std::vector<ResidueSet> levels_;
  std::vector<int> current_;
  std::vector<int> best_;
  std::vector<int> found_;
  int target_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SidonSearchResult max_sidon_search(int n, int t, SearchBudget budget) {
  require_modulus(n);
  require_strength(t);
  return Searcher(n, t, budget).run();
}

std::vector<ExactnessRow> bound_exactness_report(int n_max, SearchBudget budget, int jobs) {
  if (n_max < 2) throw DomainError(fmt::format("n_max = {} (need >= 2)", n_max));
  std::vector<ExactnessRow> rows(static_cast<std::size_t>(n_max - 1));
  std::atomic<int> next{2};
  auto worker = [&] {
    for (int n = next++; n <= n_max; n = next++) {
      const SidonSearchResult r = max_sidon_search(n, 3, budget);
      rows[static_cast<std::size_t>(n - 2)] = ExactnessRow{
          .n = n,
          .lower_bound = lower_bound_size(n, 3),
          .exact = r.max_cardinality,
          .equal = r.complete && r.matches_lower_bound,
          .complete = r.complete,
          .witness = r.witness.elements(),
          .nodes = r.nodes_explored,
      };
    }
  };
  const int threads = std::clamp(jobs, 1, n_max - 1);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return rows;
}

}  // namespace sdesign
