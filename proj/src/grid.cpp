#include "dioph/grid.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace dioph {

namespace {

std::uint64_t number(std::string_view text, std::string_view spec) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bad grid '" + std::string(spec) + "': '" + std::string(text) + "' is not an integer");
  }
  return value;
}

}  // namespace

std::vector<std::uint64_t> parse_grid(std::string_view spec) {
  std::vector<std::uint64_t> grid;
  if (spec.find(':') != std::string_view::npos) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first + 1);
    if (second == std::string_view::npos || spec.find(':', second + 1) != std::string_view::npos) {
      throw std::invalid_argument("bad grid '" + std::string(spec) + "': expected start:stop:factor");
    }
    const std::uint64_t start = number(spec.substr(0, first), spec);
    const std::uint64_t stop = number(spec.substr(first + 1, second - first - 1), spec);
    const std::uint64_t factor = number(spec.substr(second + 1), spec);
    if (start < 1 || stop < start) throw std::invalid_argument("bad grid '" + std::string(spec) + "': need 1 <= start <= stop");
    if (factor < 2) throw std::invalid_argument("bad grid '" + std::string(spec) + "': factor must be >= 2");
    for (std::uint64_t n = start;;) {
      grid.push_back(n);
      std::uint64_t next;
      if (__builtin_mul_overflow(n, factor, &next) || next > stop) break;
      n = next;
    }
    return grid;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const auto piece = spec.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    grid.push_back(number(piece, spec));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw std::invalid_argument("bad grid '" + std::string(spec) + "': values must be >= 1");
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw std::invalid_argument("bad grid '" + std::string(spec) + "': values must be strictly increasing");
    }
  }
  return grid;
}

}  // namespace dioph
