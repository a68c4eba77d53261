#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dioph/count.hpp"
#include "dioph/equation.hpp"
#include "dioph/limits.hpp"

namespace dioph {

/// Dense representation table r[0..cap]: r[n] is the number of ordered tuples
/// (x_j >= 1) with sum_j a_j x_j^k_j == n over `terms()`. The empty term list
/// is the unit table (r[0] = 1).
class RTable {
 public:
  RTable(std::vector<Term> terms, std::vector<Count> counts);

  /// Unit element of convolve: no terms, r[0] = 1.
  static RTable unit(std::uint64_t cap);

  std::uint64_t cap() const noexcept { return counts_.size() - 1; }
  Count operator[](std::uint64_t n) const { return counts_.at(n); }
  std::span<const Count> counts() const noexcept { return counts_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Sum of r[n] over 0 <= n <= up_to (clamped to cap).
  Count prefix_sum(std::uint64_t up_to) const;

  friend bool operator==(const RTable&, const RTable&) = default;

 private:
  std::vector<Term> terms_;
  std::vector<Count> counts_;
};

class CapMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Indicator of the values a * m^k (m >= 1) up to cap.
RTable power_indicator(std::uint32_t k, std::uint32_t coefficient, std::uint64_t cap,
                       const Limits& limits = {});

/// Indicator of a * m^k restricted to 1 <= m <= max_base.
RTable bounded_power_indicator(std::uint32_t k, std::uint32_t coefficient, std::uint64_t max_base,
                               std::uint64_t cap, const Limits& limits = {});

/// Truncated additive convolution. Loops run over the nonzero support of the
/// sparser operand, so indicator folds cost O(cap * cap^(1/k)).
RTable convolve(const RTable& left, const RTable& right, const Limits& limits = {});

/// Fold of power_indicator over `terms` via convolve.
RTable r_table(std::span<const Term> terms, std::uint64_t cap, const Limits& limits = {});

/// Nested-loop count of ordered tuples with weighted power sum == n. Slow;
/// for cross-checking the table machinery at small n.
Count r_oracle(std::span<const Term> terms, std::uint64_t n);

enum class MomentRoute {
  Automatic,   // whichever of the two needs fewer entries
  DenseTable,  // sum of r_t(n)^2 over a convolved table of cap t * P^k
  SortedSums,  // sort all P^t t-fold sums, sum squared multiplicities
};

/// Number of solutions of m_1^k + ... + m_t^k = m'_1^k + ... + m'_t^k with
/// every variable in [1, P], i.e. the 2t-th moment of the Weyl sum over [0,1].
Count even_moment(std::uint32_t k, std::uint32_t t, std::uint64_t max_base, const Limits& limits = {},
                  MomentRoute route = MomentRoute::Automatic);

}  // namespace dioph
