#include "dioph/power_tables.hpp"

#include <algorithm>

#include "dioph/int_math.hpp"

namespace dioph {

RTable::RTable(std::vector<Term> terms, std::vector<Count> counts)
    : terms_(std::move(terms)), counts_(std::move(counts)) {
  if (counts_.empty()) throw std::invalid_argument("RTable needs at least the entry r[0]");
}

RTable RTable::unit(std::uint64_t cap) {
  std::vector<Count> counts(cap + 1, 0);
  counts[0] = 1;
  return RTable({}, std::move(counts));
}

Count RTable::prefix_sum(std::uint64_t up_to) const {
  const std::uint64_t last = std::min(up_to, cap());
  Count total = 0;
  for (std::uint64_t n = 0; n <= last; ++n) total = checked_add(total, counts_[n]);
  return total;
}

namespace {

std::vector<Count> zero_table(std::uint64_t cap, const Limits& limits, const char* what) {
  if (cap == UINT64_MAX) throw MemoryBudgetExceeded(what, cap, limits.memory_budget);
  require_budget(limits, cap + 1, what);
  return std::vector<Count>(cap + 1, 0);
}

std::vector<std::uint64_t> support(std::span<const Count> counts) {
  std::vector<std::uint64_t> nz;
  for (std::uint64_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != 0) nz.push_back(i);
  }
  return nz;
}

}  // namespace

RTable bounded_power_indicator(std::uint32_t k, std::uint32_t coefficient, std::uint64_t max_base,
                               std::uint64_t cap, const Limits& limits) {
  if (k == 0 || coefficient == 0) throw std::invalid_argument("power_indicator: k and coefficient must be >= 1");
  if (cap == 0) throw std::invalid_argument("power_indicator: cap must be >= 1");
  auto counts = zero_table(cap, limits, "power indicator");
  for (std::uint64_t m = 1; m <= max_base; ++m) {
    const auto power = checked_pow(m, k, cap / coefficient);
    if (!power) break;
    counts[*power * coefficient] = 1;
  }
  return RTable({Term{coefficient, k}}, std::move(counts));
}

RTable power_indicator(std::uint32_t k, std::uint32_t coefficient, std::uint64_t cap, const Limits& limits) {
  return bounded_power_indicator(k, coefficient, UINT64_MAX, cap, limits);
}

RTable convolve(const RTable& left, const RTable& right, const Limits& limits) {
  if (left.cap() != right.cap()) {
    throw CapMismatch("convolve: cap mismatch (" + std::to_string(left.cap()) + " vs " +
                      std::to_string(right.cap()) + ")");
  }
  const std::uint64_t cap = left.cap();
  auto out = zero_table(cap, limits, "convolution");

  const auto left_nz = support(left.counts());
  const auto right_nz = support(right.counts());
  const bool left_sparser = left_nz.size() <= right_nz.size();
  const auto& outer_nz = left_sparser ? left_nz : right_nz;
  const auto& inner_nz = left_sparser ? right_nz : left_nz;
  const auto outer = left_sparser ? left.counts() : right.counts();
  const auto inner = left_sparser ? right.counts() : left.counts();

  for (const std::uint64_t i : outer_nz) {
    const Count weight = outer[i];
    const std::uint64_t room = cap - i;
    for (const std::uint64_t j : inner_nz) {
      if (j > room) break;
      const Count add = weight == 1 ? inner[j] : checked_mul(weight, inner[j]);
      out[i + j] = checked_add(out[i + j], add);
    }
  }

  std::vector<Term> terms = left.terms();
  terms.insert(terms.end(), right.terms().begin(), right.terms().end());
  return RTable(std::move(terms), std::move(out));
}

RTable r_table(std::span<const Term> terms, std::uint64_t cap, const Limits& limits) {
  if (terms.empty()) throw std::invalid_argument("r_table: term list must not be empty");
  RTable table = power_indicator(terms.front().exponent, terms.front().coefficient, cap, limits);
  for (const auto& t : terms.subspan(1)) {
    table = convolve(table, power_indicator(t.exponent, t.coefficient, cap, limits), limits);
  }
  return table;
}

namespace {

Count oracle_from(std::span<const Term> terms, std::size_t index, std::uint64_t remaining) {
  if (index == terms.size()) return remaining == 0 ? 1 : 0;
  const Term& t = terms[index];
  // every later term contributes at least its coefficient
  std::uint64_t reserve = 0;
  for (std::size_t j = index + 1; j < terms.size(); ++j) reserve += terms[j].coefficient;
  if (index + 1 == terms.size()) {
    if (t.exponent == 1) return remaining > 0 && remaining % t.coefficient == 0 ? 1 : 0;
  }
  Count total = 0;
  for (std::uint64_t x = 1;; ++x) {
    std::uint64_t value = t.coefficient;
    bool over = false;
    for (std::uint32_t e = 0; e < t.exponent && !over; ++e) over = __builtin_mul_overflow(value, x, &value);
    if (over || value > remaining || remaining - value < reserve) break;
    total = checked_add(total, oracle_from(terms, index + 1, remaining - value));
  }
  return total;
}

}  // namespace

Count r_oracle(std::span<const Term> terms, std::uint64_t n) {
  if (terms.empty()) return n == 0 ? 1 : 0;
  return oracle_from(terms, 0, n);
}

namespace {

Count moment_dense(std::uint32_t k, std::uint32_t t, std::uint64_t max_base, std::uint64_t cap,
                   const Limits& limits) {
  const RTable single = bounded_power_indicator(k, 1, max_base, cap, limits);
  RTable table = single;
  for (std::uint32_t i = 1; i < t; ++i) table = convolve(table, single, limits);
  Count total = 0;
  for (const Count r : table.counts()) total = checked_add(total, checked_mul(r, r));
  return total;
}

Count moment_sorted(std::uint32_t k, std::uint32_t t, std::uint64_t max_base, std::uint64_t entries,
                    const Limits& limits) {
  require_budget(limits, entries, "sorted moment sums");
  std::vector<std::uint64_t> powers(max_base);
  for (std::uint64_t m = 1; m <= max_base; ++m) {
    const auto p = checked_pow(m, k, UINT64_MAX / t);
    if (!p) throw CountOverflow("even_moment: m^k * t exceeds 64 bits");
    powers[m - 1] = *p;
  }
  std::vector<std::uint64_t> sums{0};
  for (std::uint32_t i = 0; i < t; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(sums.size() * powers.size());
    for (const auto s : sums) {
      for (const auto p : powers) next.push_back(s + p);
    }
    sums = std::move(next);
  }
  std::sort(sums.begin(), sums.end());
  Count total = 0;
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) ++j;
    const Count run = j - i;
    total = checked_add(total, run * run);
    i = j;
  }
  return total;
}

}  // namespace

Count even_moment(std::uint32_t k, std::uint32_t t, std::uint64_t max_base, const Limits& limits,
                  MomentRoute route) {
  if (k == 0 || t == 0 || max_base == 0) throw std::invalid_argument("even_moment: k, t and P must be >= 1");

  // Entries each route must hold; UINT64_MAX marks "does not fit at all".
  std::uint64_t dense_cap = UINT64_MAX;
  if (const auto top = checked_pow(max_base, k)) {
    std::uint64_t cap;
    if (!__builtin_mul_overflow(*top, std::uint64_t{t}, &cap) && cap < UINT64_MAX) dense_cap = cap;
  }
  std::uint64_t sorted_entries = UINT64_MAX;
  if (const auto all = checked_pow(max_base, t)) sorted_entries = *all;

  if (route == MomentRoute::Automatic) {
    const std::uint64_t dense_entries = dense_cap == UINT64_MAX ? UINT64_MAX : dense_cap + 1;
    route = dense_entries < sorted_entries ? MomentRoute::DenseTable : MomentRoute::SortedSums;
  }
  if (route == MomentRoute::DenseTable) {
    if (dense_cap == UINT64_MAX) throw MemoryBudgetExceeded("even moment table", UINT64_MAX, limits.memory_budget);
    return moment_dense(k, t, max_base, dense_cap, limits);
  }
  return moment_sorted(k, t, max_base, sorted_entries, limits);
}

}  // namespace dioph
