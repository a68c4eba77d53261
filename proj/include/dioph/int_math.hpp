#pragma once

#include <cstdint>
#include <optional>

namespace dioph {

/// base^exp, or nullopt when the result exceeds `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp,
                                         std::uint64_t limit = UINT64_MAX);

/// Largest x >= 0 with x^k <= value. Binary search on exact integer powers;
/// no floating point is involved.
std::uint64_t iroot(std::uint64_t value, unsigned k);

/// Same as iroot, with the search restricted to [0, upper].
std::uint64_t iroot_bounded(std::uint64_t value, unsigned k, std::uint64_t upper);

/// x if value == x^k for some x >= 1.
std::optional<std::uint64_t> exact_root(std::uint64_t value, unsigned k);

}  // namespace dioph
