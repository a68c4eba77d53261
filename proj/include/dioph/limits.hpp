#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dioph {

/// Resource knobs shared by the counting engines.
struct Limits {
  /// Largest number of table entries (or stored partial sums) one structure
  /// may hold.
  std::uint64_t memory_budget = 200'000'000;
  /// Worker threads for sweeps and batched target evaluation.
  unsigned workers = 1;
};

class MemoryBudgetExceeded : public std::runtime_error {
 public:
  MemoryBudgetExceeded(std::string what_needed, std::uint64_t requested, std::uint64_t budget)
      : std::runtime_error(what_needed + " needs " + std::to_string(requested) +
                           " entries, memory budget is " + std::to_string(budget)),
        requested_(requested),
        budget_(budget) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t requested_;
  std::uint64_t budget_;
};

inline void require_budget(const Limits& limits, std::uint64_t entries, const std::string& what) {
  if (entries > limits.memory_budget) throw MemoryBudgetExceeded(what, entries, limits.memory_budget);
}

}  // namespace dioph
