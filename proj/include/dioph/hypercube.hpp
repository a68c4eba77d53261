#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/count.hpp"
#include "dioph/equation.hpp"
#include "dioph/limits.hpp"

namespace dioph {

enum class Backend {
  Enumerate,     // nested loops, innermost variable solved by an integer root
  Table,         // dense representation table of the right-hand side
  MeetInMiddle,  // split the right-hand side in halves and join
};

std::string_view to_string(Backend backend);
/// Accepts "enumerate", "table", "mitm".
Backend parse_backend(std::string_view name);

/// Raised when a backend cannot serve a request within the configured
/// limits; `fallback()` names one that can.
class BackendInapplicable : public std::runtime_error {
 public:
  BackendInapplicable(Backend backend, Backend fallback, const std::string& reason);
  Backend backend() const noexcept { return backend_; }
  Backend fallback() const noexcept { return fallback_; }

 private:
  Backend backend_;
  Backend fallback_;
};

/// Number of ordered solutions with all variables in [1, side].
struct CountPoint {
  std::uint64_t side = 0;
  Count count = 0;
  friend bool operator==(const CountPoint&, const CountPoint&) = default;
};

struct CountSeries {
  DiagonalEquation equation;
  Backend backend;
  std::vector<CountPoint> points;  // strictly increasing side, non-decreasing count
};

/// Exact number of solutions in the cube [1, N]^s (every variable, x1
/// included, bounded by N).
Count count_in_cube(const DiagonalEquation& eq, std::uint64_t side, Backend backend, const Limits& limits = {});

/// Counts for every side in `grid` (strictly increasing). Table and
/// meet-in-the-middle backends build their structures once at the largest
/// side; enumeration spreads grid points over `limits.workers` threads.
CountSeries sweep(const DiagonalEquation& eq, std::span<const std::uint64_t> grid, Backend backend,
                  const Limits& limits = {});

/// Solutions in the cube whose right-hand variables satisfy x2 <= x3 <= ... <= xs.
/// Only defined when all right-hand terms are identical.
Count count_nondecreasing(const DiagonalEquation& eq, std::uint64_t side);

/// Ordered tuples over `terms` with weighted power sum exactly n, by joining
/// sorted partial-sum multisets of the two halves. Requires 2 to 4 terms.
Count meet_in_middle_count(std::span<const Term> terms, std::uint64_t n, const Limits& limits = {});

/// Every solution (x1, ..., xs) in the cube, lexicographic order. Debug aid,
/// limited to side <= 100.
std::vector<std::vector<std::uint64_t>> list_solutions(const DiagonalEquation& eq, std::uint64_t side);

}  // namespace dioph
