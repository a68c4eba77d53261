#include "dioph/int_math.hpp"

#include <stdexcept>

namespace dioph {

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result) || result > limit) return std::nullopt;
  }
  if (result > limit) return std::nullopt;
  return result;
}

namespace {

// Every root of a 64-bit value with k >= 2 is below 2^32.
std::uint64_t root_upper_bound(std::uint64_t value, unsigned k) {
  if (k == 1) return value;
  const unsigned bits = 64 / k + 1;
  const std::uint64_t cap = bits >= 64 ? UINT64_MAX : (std::uint64_t{1} << bits);
  return value < cap ? value : cap;
}

}  // namespace

std::uint64_t iroot_bounded(std::uint64_t value, unsigned k, std::uint64_t upper) {
  if (k == 0) throw std::invalid_argument("iroot: exponent must be positive");
  if (k == 1) return value < upper ? value : upper;
  std::uint64_t lo = 0;
  std::uint64_t hi = upper;
  // invariant: lo^k <= value; answer in [lo, hi]
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (checked_pow(mid, k, value)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::uint64_t iroot(std::uint64_t value, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot: exponent must be positive");
  return iroot_bounded(value, k, root_upper_bound(value, k));
}

std::optional<std::uint64_t> exact_root(std::uint64_t value, unsigned k) {
  if (value == 0) return std::nullopt;
  const std::uint64_t r = iroot(value, k);
  if (checked_pow(r, k) == value) return r;
  return std::nullopt;
}

}  // namespace dioph
