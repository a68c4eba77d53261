#include "dioph/parametric.hpp"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "dioph/int_math.hpp"

namespace dioph {

namespace {

using boost::multiprecision::cpp_int;

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("parametric coordinate exceeds 64 bits");
  return r;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("parametric coordinate exceeds 64 bits");
  return r;
}

void require_sector(std::int64_t a, std::int64_t b) {
  if (!(b >= 1 && a > b)) {
    throw std::invalid_argument("pythagorean parameters need a > b >= 1 (got a=" + std::to_string(a) +
                                ", b=" + std::to_string(b) + ")");
  }
}

}  // namespace

std::array<std::int64_t, 3> cubic_unit(std::int64_t a) {
  const std::int64_t a3 = mul(mul(a, a), a);
  const std::int64_t a4 = mul(a3, a);
  return {mul(9, a4), add(1, -mul(9, a3)), add(mul(3, a), -mul(9, a4))};
}

bool satisfies_cubic_unit(std::span<const std::int64_t> x) {
  if (x.size() != 3) return false;
  cpp_int sum = 0;
  for (const auto v : x) {
    const cpp_int c = v;
    sum += c * c * c;
  }
  return sum == 1;
}

std::array<std::int64_t, 3> pythagorean(std::int64_t a, std::int64_t b) {
  require_sector(a, b);
  const std::int64_t a2 = mul(a, a);
  const std::int64_t b2 = mul(b, b);
  return {a2 - b2, mul(2, mul(a, b)), add(a2, b2)};
}

std::array<std::int64_t, 3> pythagorean_scaled(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (c < 1) throw std::invalid_argument("pythagorean scale c must be >= 1");
  const auto base = pythagorean(a, b);
  return {mul(base[0], c), mul(base[1], c), mul(base[2], c)};
}

bool satisfies_pythagorean(std::span<const std::int64_t> x) {
  if (x.size() != 3 || x[0] <= 0 || x[1] <= 0 || x[2] <= 0) return false;
  const cpp_int a = x[0];
  const cpp_int b = x[1];
  const cpp_int c = x[2];
  return a * a + b * b == c * c;
}

std::uint64_t sector_count(std::uint64_t side) {
  std::uint64_t total = 0;
  for (std::uint64_t b = 1;; ++b) {
    const std::uint64_t b2 = b * b;
    if (b2 >= side) break;
    const std::uint64_t a_max = iroot(side - b2, 2);
    if (a_max <= b) break;  // a_max shrinks as b grows
    total += a_max - b;
  }
  return total;
}

const ParametricFamily& cubic_unit_family() {
  static const ParametricFamily family{
      "cubic-unit",
      1,
      4,
      [](std::span<const std::int64_t> t) {
        const auto x = cubic_unit(t[0]);
        return IntTuple(x.begin(), x.end());
      },
      [](std::span<const std::int64_t>) { return true; },
      [](std::uint64_t side) {
        // |x1| = 9 a^4 <= N
        return static_cast<std::int64_t>(iroot(side / 9, 4));
      },
      [](const IntTuple& x) { return satisfies_cubic_unit(x); },
  };
  return family;
}

const ParametricFamily& pythagorean_family() {
  static const ParametricFamily family{
      "pythagorean",
      2,
      2,
      [](std::span<const std::int64_t> t) {
        const auto x = pythagorean(t[0], t[1]);
        return IntTuple(x.begin(), x.end());
      },
      [](std::span<const std::int64_t> t) { return t[1] >= 1 && t[0] > t[1]; },
      [](std::uint64_t side) {
        // x3 = a^2 + b^2 <= N
        return static_cast<std::int64_t>(iroot(side, 2));
      },
      [](const IntTuple& x) { return satisfies_pythagorean(x); },
  };
  return family;
}

const ParametricFamily& pythagorean_scaled_family() {
  static const ParametricFamily family{
      "pythagorean-scaled",
      3,
      3,
      [](std::span<const std::int64_t> t) {
        const auto x = pythagorean_scaled(t[0], t[1], t[2]);
        return IntTuple(x.begin(), x.end());
      },
      [](std::span<const std::int64_t> t) { return t[1] >= 1 && t[0] > t[1] && t[2] >= 1; },
      [](std::uint64_t side) { return static_cast<std::int64_t>(std::max<std::uint64_t>(iroot(side, 2), side / 5)); },
      [](const IntTuple& x) { return satisfies_pythagorean(x); },
  };
  return family;
}

const ParametricFamily& family_by_name(const std::string& name) {
  if (name == "cubic-unit") return cubic_unit_family();
  if (name == "pythagorean") return pythagorean_family();
  if (name == "pythagorean-scaled") return pythagorean_scaled_family();
  throw std::invalid_argument("unknown parametric family '" + name +
                              "' (cubic-unit|pythagorean|pythagorean-scaled)");
}

std::uint64_t family_count_in_cube(const ParametricFamily& family, std::uint64_t side) {
  if (family.arity < 1 || family.arity > 2) {
    throw std::invalid_argument("family_count_in_cube supports arity 1 or 2; " + family.name + " has arity " +
                                std::to_string(family.arity));
  }
  const std::int64_t radius = family.parameter_radius(side);
  const auto limit = static_cast<std::int64_t>(std::min<std::uint64_t>(side, INT64_MAX));
  std::set<IntTuple> seen;
  std::vector<std::int64_t> params(family.arity, 0);

  auto visit = [&] {
    if (!family.domain(params)) return;
    const IntTuple x = family.map(params);
    for (const auto v : x) {
      if (v > limit || v < -limit) return;
    }
    seen.insert(x);
  };
  for (std::int64_t a = -radius; a <= radius; ++a) {
    params[0] = a;
    if (family.arity == 1) {
      visit();
      continue;
    }
    for (std::int64_t b = -radius; b <= radius; ++b) {
      params[1] = b;
      visit();
    }
  }
  return seen.size();
}

std::uint64_t pythagorean_scaled_distinct(std::uint64_t side) {
  std::set<std::array<std::int64_t, 3>> seen;
  const auto limit = static_cast<std::int64_t>(side);
  for (std::int64_t b = 1; 2 * b * b < limit; ++b) {
    for (std::int64_t a = b + 1; a * a + b * b <= limit; ++a) {
      const auto base = pythagorean(a, b);
      for (std::int64_t c = 1; base[2] * c <= limit; ++c) {
        std::array<std::int64_t, 3> key{base[0] * c, base[1] * c, base[2] * c};
        if (key[0] > key[1]) std::swap(key[0], key[1]);
        seen.insert(key);
      }
    }
  }
  return seen.size();
}

}  // namespace dioph
