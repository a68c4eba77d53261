#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dioph {

/// Exact solution count. Every accumulation goes through the checked helpers
/// below, so a result either fits in 128 bits or the computation throws.
using Count = unsigned __int128;

class CountOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) throw CountOverflow("count exceeds 128-bit range (addition)");
  return r;
}

inline Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) throw CountOverflow("count exceeds 128-bit range (multiplication)");
  return r;
}

std::string to_string(Count value);

/// Parses a non-negative decimal integer; throws std::invalid_argument on bad
/// input and CountOverflow if it does not fit.
Count parse_count(std::string_view text);

long double to_long_double(Count value);

}  // namespace dioph
