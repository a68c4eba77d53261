#include "dioph/count.hpp"

#include <algorithm>

namespace dioph {

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Count parse_count(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  Count value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a non-negative integer: " + std::string(text));
    value = checked_add(checked_mul(value, 10), static_cast<Count>(c - '0'));
  }
  return value;
}

long double to_long_double(Count value) {
  const auto high = static_cast<std::uint64_t>(value >> 64);
  const auto low = static_cast<std::uint64_t>(value);
  return static_cast<long double>(high) * 18446744073709551616.0L + static_cast<long double>(low);
}

}  // namespace dioph
