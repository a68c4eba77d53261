#include "dioph/hypercube.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <thread>
#include <utility>

#include "dioph/int_math.hpp"
#include "dioph/power_tables.hpp"

namespace dioph {

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Enumerate: return "enumerate";
    case Backend::Table: return "table";
    case Backend::MeetInMiddle: return "mitm";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "enumerate") return Backend::Enumerate;
  if (name == "table") return Backend::Table;
  if (name == "mitm") return Backend::MeetInMiddle;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "' (enumerate|table|mitm)");
}

BackendInapplicable::BackendInapplicable(Backend backend, Backend fallback, const std::string& reason)
    : std::runtime_error("backend " + std::string(to_string(backend)) + " is not applicable: " + reason +
                         "; try --backend " + std::string(to_string(fallback))),
      backend_(backend),
      fallback_(fallback) {}

namespace {

using Terms = std::span<const Term>;

std::optional<std::uint64_t> term_value(const Term& t, std::uint64_t x, std::uint64_t limit) {
  const auto p = checked_pow(x, t.exponent, limit / t.coefficient);
  if (!p) return std::nullopt;
  return *p * t.coefficient;
}

std::uint64_t min_sum(Terms terms) {
  std::uint64_t total = 0;
  for (const auto& t : terms) total += t.coefficient;
  return total;
}

template <class Visit>
void sums_from(Terms terms, std::size_t index, std::uint64_t partial, std::uint64_t room, Visit& visit) {
  if (index == terms.size()) {
    visit(partial);
    return;
  }
  const std::uint64_t reserve = min_sum(terms.subspan(index + 1));
  if (room < reserve) return;
  for (std::uint64_t x = 1;; ++x) {
    const auto v = term_value(terms[index], x, room - reserve);
    if (!v) break;
    sums_from(terms, index + 1, partial + *v, room - *v, visit);
  }
}

/// Calls visit(v) for the weighted power sum v of every tuple with v <= bound.
template <class Visit>
void for_each_sum(Terms terms, std::uint64_t bound, Visit&& visit) {
  sums_from(terms, 0, 0, bound, visit);
}

/// Tuples with weighted power sum <= bound; the last variable is counted by
/// an integer root instead of a loop.
Count enumerate_at_most(Terms terms, std::uint64_t bound) {
  if (terms.empty()) return 1;
  if (terms.size() == 1) return iroot(bound / terms.front().coefficient, terms.front().exponent);
  const std::uint64_t reserve = min_sum(terms.subspan(1));
  if (bound < reserve + terms.front().coefficient) return 0;
  Count total = 0;
  for (std::uint64_t x = 1;; ++x) {
    const auto v = term_value(terms.front(), x, bound - reserve);
    if (!v) break;
    total = checked_add(total, enumerate_at_most(terms.subspan(1), bound - *v));
  }
  return total;
}

/// 1 when value == a * x^k for an x in [1, upper].
bool solves_single(const Term& t, std::uint64_t value, std::uint64_t upper) {
  if (value == 0 || value % t.coefficient != 0) return false;
  const std::uint64_t q = value / t.coefficient;
  const std::uint64_t r = iroot_bounded(q, t.exponent, std::min(upper, q));
  return r >= 1 && checked_pow(r, t.exponent) == q;
}

/// Tuples with weighted power sum exactly target; every variable <= upper.
Count enumerate_exactly(Terms terms, std::uint64_t target, std::uint64_t upper) {
  if (terms.size() == 1) return solves_single(terms.front(), target, upper) ? 1 : 0;
  const std::uint64_t reserve = min_sum(terms.subspan(1));
  if (target < reserve) return 0;
  Count total = 0;
  for (std::uint64_t x = 1; x <= upper; ++x) {
    const auto v = term_value(terms.front(), x, target - reserve);
    if (!v) break;
    total = checked_add(total, enumerate_exactly(terms.subspan(1), target - *v, upper));
  }
  return total;
}

/// Ordered tuples with weighted power sum exactly target and every variable
/// <= upper, for identical terms: walks nondecreasing tuples and adds the
/// number of distinct orderings of each. `run` is the length of the trailing
/// block equal to lo, `ties` the product of factorials of finished blocks.
Count orderings_exactly(const Term& t, std::size_t remaining_vars, std::uint64_t lo, std::uint64_t target,
                        std::uint64_t upper, std::uint64_t run, std::uint64_t ties, std::uint64_t all_orders) {
  Count total = 0;
  if (remaining_vars == 1) {
    if (!solves_single(t, target, upper)) return 0;
    const std::uint64_t x = iroot(target / t.coefficient, t.exponent);
    if (x < lo) return 0;
    return all_orders / (x == lo ? ties * (run + 1) : ties);
  }
  for (std::uint64_t x = lo; x <= upper; ++x) {
    const auto v = term_value(t, x, target);
    if (!v || Count{*v} * remaining_vars > target) break;
    total = checked_add(total, x == lo ? orderings_exactly(t, remaining_vars - 1, x, target - *v, upper, run + 1,
                                                           ties * (run + 1), all_orders)
                                       : orderings_exactly(t, remaining_vars - 1, x, target - *v, upper, 1, ties,
                                                           all_orders));
  }
  return total;
}

/// Runs body(i) for i in [first, last], striped over the workers so that the
/// expensive high indices are shared. Results must be written per index.
template <class Body>
void parallel_striped(std::uint64_t first, std::uint64_t last, unsigned workers, Body&& body) {
  if (first > last) return;
  const std::uint64_t span = last - first + 1;
  if (workers <= 1 || span < 2) {
    for (std::uint64_t i = first; i <= last; ++i) body(i);
    return;
  }
  const unsigned used = static_cast<unsigned>(std::min<std::uint64_t>(workers, span));
  std::vector<std::exception_ptr> errors(used);
  {
    std::vector<std::jthread> threads;
    threads.reserve(used);
    for (unsigned w = 0; w < used; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::uint64_t i = first + w; i <= last; i += used) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Partial-sum counts for one half of a term list, queried at exact values.
class HalfIndex {
 public:
  HalfIndex(Terms terms, std::uint64_t cap, const Limits& limits) : terms_(terms.begin(), terms.end()) {
    if (terms_.size() == 1) {
      kind_ = Kind::Single;
      return;
    }
    const Count tuples = enumerate_at_most(terms, cap);
    if (cap < UINT64_MAX && cap + 1 <= limits.memory_budget && Count{cap} + 1 <= tuples * 8) {
      kind_ = Kind::Dense;
      dense_.assign(cap + 1, 0);
      for_each_sum(terms, cap, [&](std::uint64_t v) { ++dense_[v]; });
      return;
    }
    if (tuples > limits.memory_budget) {
      throw BackendInapplicable(Backend::MeetInMiddle, Backend::Enumerate,
                                "half-sum multiset needs " + to_string(tuples) + " entries, memory budget is " +
                                    std::to_string(limits.memory_budget));
    }
    kind_ = Kind::Sorted;
    std::vector<std::uint64_t> values;
    values.reserve(static_cast<std::size_t>(tuples));
    for_each_sum(terms, cap, [&](std::uint64_t v) { values.push_back(v); });
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size();) {
      std::size_t j = i;
      while (j < values.size() && values[j] == values[i]) ++j;
      runs_.emplace_back(values[i], j - i);
      i = j;
    }
  }

  /// Tuples of this half summing to value; each variable is known to be <= root_upper.
  Count lookup(std::uint64_t value, std::uint64_t root_upper) const {
    switch (kind_) {
      case Kind::Single: return solves_single(terms_.front(), value, root_upper) ? 1 : 0;
      case Kind::Dense: return value < dense_.size() ? dense_[value] : 0;
      case Kind::Sorted: {
        const auto it = std::lower_bound(runs_.begin(), runs_.end(), std::pair<std::uint64_t, std::uint64_t>{value, 0});
        return it != runs_.end() && it->first == value ? it->second : 0;
      }
    }
    return 0;
  }

 private:
  enum class Kind { Single, Dense, Sorted };
  std::vector<Term> terms_;
  Kind kind_ = Kind::Single;
  std::vector<std::uint64_t> dense_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> runs_;
};

std::size_t left_half_size(std::size_t terms) { return (terms + 1) / 2; }

/// Sorted partial sums of a half, each <= bound. The empty half is {0}.
std::vector<std::uint64_t> sorted_sums(Terms terms, std::uint64_t bound, const Limits& limits) {
  const Count tuples = enumerate_at_most(terms, bound);
  if (tuples > limits.memory_budget) {
    throw BackendInapplicable(Backend::MeetInMiddle, Backend::Enumerate,
                              "half-sum list needs " + to_string(tuples) + " entries, memory budget is " +
                                  std::to_string(limits.memory_budget));
  }
  std::vector<std::uint64_t> values;
  values.reserve(static_cast<std::size_t>(tuples));
  for_each_sum(terms, bound, [&](std::uint64_t v) { values.push_back(v); });
  std::sort(values.begin(), values.end());
  return values;
}

std::uint64_t homogeneous_cap(std::uint64_t side, std::uint32_t k) {
  const auto cap = checked_pow(side, k);
  if (!cap) throw std::overflow_error("N^k exceeds the 64-bit value range");
  return *cap;
}

/// r(m^k) for m = 0..max_side (entry 0 unused).
std::vector<Count> homogeneous_targets(const DiagonalEquation& eq, std::uint64_t max_side, Backend backend,
                                       const Limits& limits) {
  const std::uint32_t k = eq.lhs_exponent();
  const Terms rhs = eq.rhs();
  const std::uint64_t cap = homogeneous_cap(max_side, k);
  std::vector<Count> per_side(max_side + 1, 0);

  switch (backend) {
    case Backend::Enumerate: {
      const bool symmetric = std::all_of(rhs.begin(), rhs.end(), [&](const Term& t) { return t == rhs.front(); });
      std::uint64_t all_orders = 1;
      for (std::uint64_t i = 2; i <= rhs.size(); ++i) all_orders *= i;
      parallel_striped(1, max_side, limits.workers, [&](std::uint64_t m) {
        const std::uint64_t target = homogeneous_cap(m, k);
        per_side[m] = symmetric ? orderings_exactly(rhs.front(), rhs.size(), 1, target, m, 0, 1, all_orders)
                                : enumerate_exactly(rhs, target, m);
      });
      break;
    }
    case Backend::Table: {
      if (cap == UINT64_MAX || cap + 1 > limits.memory_budget) {
        throw BackendInapplicable(Backend::Table, Backend::MeetInMiddle,
                                  "table cap N^k = " + std::to_string(cap) + " exceeds the memory budget of " +
                                      std::to_string(limits.memory_budget) + " entries");
      }
      const RTable table = r_table(rhs, cap, limits);
      for (std::uint64_t m = 1; m <= max_side; ++m) per_side[m] = table[homogeneous_cap(m, k)];
      break;
    }
    case Backend::MeetInMiddle: {
      const std::size_t split = left_half_size(rhs.size());
      const Terms indexed = rhs.first(split);
      const Terms scanned = rhs.subspan(split);
      const HalfIndex index(indexed, cap, limits);
      const std::uint64_t reserve = min_sum(indexed);
      parallel_striped(1, max_side, limits.workers, [&](std::uint64_t m) {
        const std::uint64_t target = homogeneous_cap(m, k);
        if (target < reserve) return;
        Count total = 0;
        for_each_sum(scanned, target - reserve,
                     [&](std::uint64_t v) { total = checked_add(total, index.lookup(target - v, m)); });
        per_side[m] = total;
      });
      break;
    }
  }
  return per_side;
}

std::vector<Count> explicit_counts(const DiagonalEquation& eq, std::span<const std::uint64_t> grid, Backend backend,
                                   const Limits& limits) {
  const Terms rhs = eq.rhs();
  const std::uint64_t max_side = grid.back();
  std::vector<Count> counts(grid.size(), 0);

  switch (backend) {
    case Backend::Enumerate: {
      parallel_striped(0, grid.size() - 1, limits.workers,
                       [&](std::uint64_t i) { counts[i] = enumerate_at_most(rhs, grid[i]); });
      break;
    }
    case Backend::Table: {
      if (max_side == UINT64_MAX || max_side + 1 > limits.memory_budget) {
        throw BackendInapplicable(Backend::Table, Backend::MeetInMiddle,
                                  "table cap " + std::to_string(max_side) + " exceeds the memory budget of " +
                                      std::to_string(limits.memory_budget) + " entries");
      }
      const RTable table = r_table(rhs, max_side, limits);
      Count running = 0;
      std::uint64_t n = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (; n <= grid[i]; ++n) running = checked_add(running, table[n]);
        // r[0] = 0 for a non-empty term list, so the running sum is over 1..N
        counts[i] = running;
      }
      break;
    }
    case Backend::MeetInMiddle: {
      const std::size_t split = left_half_size(rhs.size());
      const Terms left_terms = rhs.first(split);
      const Terms right_terms = rhs.subspan(split);
      const std::uint64_t left_min = min_sum(left_terms);
      const std::uint64_t right_min = min_sum(right_terms);
      if (max_side < left_min + right_min) break;
      const auto left = sorted_sums(left_terms, max_side - right_min, limits);
      const auto right = sorted_sums(right_terms, max_side - left_min, limits);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::uint64_t side = grid[i];
        Count total = 0;
        std::size_t j = right.size();
        for (const std::uint64_t l : left) {
          if (l > side) break;
          while (j > 0 && right[j - 1] > side - l) --j;
          if (j == 0) break;
          total = checked_add(total, j);
        }
        counts[i] = total;
      }
      break;
    }
  }
  return counts;
}

void validate_grid(std::span<const std::uint64_t> grid) {
  if (grid.empty()) throw std::invalid_argument("grid must contain at least one side length");
  if (grid.front() == 0) throw std::invalid_argument("side lengths must be >= 1");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw std::invalid_argument("grid must be strictly increasing");
  }
}

}  // namespace

CountSeries sweep(const DiagonalEquation& eq, std::span<const std::uint64_t> grid, Backend backend,
                  const Limits& limits) {
  validate_grid(grid);
  CountSeries series{eq, backend, {}};
  series.points.reserve(grid.size());

  if (eq.is_homogeneous()) {
    const auto per_side = homogeneous_targets(eq, grid.back(), backend, limits);
    Count running = 0;
    std::uint64_t m = 1;
    for (const std::uint64_t side : grid) {
      for (; m <= side; ++m) running = checked_add(running, per_side[m]);
      series.points.push_back({side, running});
    }
  } else {
    const auto counts = explicit_counts(eq, grid, backend, limits);
    for (std::size_t i = 0; i < grid.size(); ++i) series.points.push_back({grid[i], counts[i]});
  }
  return series;
}

Count count_in_cube(const DiagonalEquation& eq, std::uint64_t side, Backend backend, const Limits& limits) {
  const std::uint64_t grid[] = {side};
  return sweep(eq, grid, backend, limits).points.front().count;
}

namespace {

Count nondecreasing_at_most(const Term& t, std::size_t remaining_vars, std::uint64_t lo, std::uint64_t bound) {
  if (remaining_vars == 1) {
    const std::uint64_t hi = iroot(bound / t.coefficient, t.exponent);
    return hi >= lo ? hi - lo + 1 : 0;
  }
  Count total = 0;
  for (std::uint64_t x = lo;; ++x) {
    const auto v = term_value(t, x, bound);
    // the remaining variables are all >= x
    if (!v || Count{*v} * remaining_vars > bound) break;
    total = checked_add(total, nondecreasing_at_most(t, remaining_vars - 1, x, bound - *v));
  }
  return total;
}

Count nondecreasing_exactly(const Term& t, std::size_t remaining_vars, std::uint64_t lo, std::uint64_t target,
                            std::uint64_t upper) {
  if (remaining_vars == 1) {
    if (!solves_single(t, target, upper)) return 0;
    return iroot(target / t.coefficient, t.exponent) >= lo ? 1 : 0;
  }
  Count total = 0;
  for (std::uint64_t x = lo; x <= upper; ++x) {
    const auto v = term_value(t, x, target);
    if (!v || Count{*v} * remaining_vars > target) break;
    total = checked_add(total, nondecreasing_exactly(t, remaining_vars - 1, x, target - *v, upper));
  }
  return total;
}

}  // namespace

Count count_nondecreasing(const DiagonalEquation& eq, std::uint64_t side) {
  if (side == 0) throw std::invalid_argument("side must be >= 1");
  const Term& first = eq.rhs().front();
  for (const auto& t : eq.rhs()) {
    if (!(t == first) || t.coefficient != 1) {
      throw std::invalid_argument(
          "count_nondecreasing needs identical unit-coefficient right-hand terms; the ordered/representation "
          "relation is undefined for mixed terms");
    }
  }
  const std::size_t vars = eq.rhs().size();
  if (!eq.is_homogeneous()) return nondecreasing_at_most(first, vars, 1, side);

  Count total = 0;
  for (std::uint64_t m = 1; m <= side; ++m) {
    total = checked_add(total, nondecreasing_exactly(first, vars, 1, homogeneous_cap(m, eq.lhs_exponent()), m));
  }
  return total;
}

Count meet_in_middle_count(std::span<const Term> terms, std::uint64_t n, const Limits& limits) {
  if (terms.size() < 2 || terms.size() > 4) {
    throw std::invalid_argument("meet_in_middle_count supports 2 to 4 terms, got " + std::to_string(terms.size()));
  }
  const std::size_t split = left_half_size(terms.size());
  const Terms left_terms = terms.first(split);
  const Terms right_terms = terms.subspan(split);
  const std::uint64_t left_min = min_sum(left_terms);
  const std::uint64_t right_min = min_sum(right_terms);
  if (n < left_min + right_min) return 0;

  const auto left = sorted_sums(left_terms, n - right_min, limits);
  const auto right = sorted_sums(right_terms, n - left_min, limits);

  // left ascending, right walked from its largest value down
  Count total = 0;
  std::size_t i = 0;
  std::size_t j = right.size();
  while (i < left.size() && j > 0) {
    const std::uint64_t sum = left[i] + right[j - 1];
    if (sum < n) {
      ++i;
    } else if (sum > n) {
      --j;
    } else {
      std::size_t li = i;
      while (li < left.size() && left[li] == left[i]) ++li;
      std::size_t rj = j;
      while (rj > 0 && right[rj - 1] == right[j - 1]) --rj;
      total = checked_add(total, checked_mul(li - i, j - rj));
      i = li;
      j = rj;
    }
  }
  return total;
}

std::vector<std::vector<std::uint64_t>> list_solutions(const DiagonalEquation& eq, std::uint64_t side) {
  if (side == 0 || side > 100) throw std::invalid_argument("solution listing is limited to 1 <= N <= 100");
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> vars(eq.rhs().size());
  const std::uint32_t k = eq.lhs_exponent();
  const std::uint64_t bound = eq.is_homogeneous() ? homogeneous_cap(side, k) : side;

  auto walk = [&](auto&& self, std::size_t index, std::uint64_t sum) -> void {
    if (index == vars.size()) {
      std::uint64_t x1 = sum;
      if (eq.is_homogeneous()) {
        const auto root = exact_root(sum, k);
        if (!root) return;
        x1 = *root;
      }
      if (x1 < 1 || x1 > side) return;
      std::vector<std::uint64_t> row{x1};
      row.insert(row.end(), vars.begin(), vars.end());
      out.push_back(std::move(row));
      return;
    }
    for (std::uint64_t x = 1; x <= side; ++x) {
      const auto v = term_value(eq.rhs()[index], x, bound - sum);
      if (!v) break;
      vars[index] = x;
      self(self, index + 1, sum + *v);
    }
  };
  walk(walk, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dioph
