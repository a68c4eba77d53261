#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace dioph {

/// "start:stop:factor" -> start, start*factor, ... while <= stop (factor >= 2),
/// or an explicit comma list "10,25,100". The result is strictly increasing.
std::vector<std::uint64_t> parse_grid(std::string_view spec);

}  // namespace dioph
