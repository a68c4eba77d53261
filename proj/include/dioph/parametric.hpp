#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dioph {

using IntTuple = std::vector<std::int64_t>;

/// A polynomial parametrisation of solutions of a fixed equation.
struct ParametricFamily {
  std::string name;
  std::size_t arity = 0;
  /// Largest polynomial degree among the coordinates.
  unsigned degree = 0;
  std::function<IntTuple(std::span<const std::int64_t>)> map;
  std::function<bool(std::span<const std::int64_t>)> domain;
  /// R such that every parameter with a coordinate inside |x| <= N has |t| <= R;
  /// found by solving the dominant coordinate <= N.
  std::function<std::int64_t(std::uint64_t)> parameter_radius;
  /// Exact (arbitrary precision) check that a tuple solves the family's equation.
  std::function<bool(const IntTuple&)> satisfies;
};

/// (9a^4, 1 - 9a^3, 3a - 9a^4); solves x1^3 + x2^3 + x3^3 = 1.
std::array<std::int64_t, 3> cubic_unit(std::int64_t a);

/// x1^3 + x2^3 + x3^3 == 1, evaluated in arbitrary precision.
bool satisfies_cubic_unit(std::span<const std::int64_t> x);

/// (a^2 - b^2, 2ab, a^2 + b^2) for a > b >= 1.
std::array<std::int64_t, 3> pythagorean(std::int64_t a, std::int64_t b);

/// c * pythagorean(a, b) for a > b >= 1, c >= 1.
std::array<std::int64_t, 3> pythagorean_scaled(std::int64_t a, std::int64_t b, std::int64_t c);

/// x1^2 + x2^2 == x3^2 with every coordinate positive (arbitrary precision).
bool satisfies_pythagorean(std::span<const std::int64_t> x);

/// Lattice points {(a, b) : a > b >= 1, a^2 + b^2 <= N}.
std::uint64_t sector_count(std::uint64_t side);

const ParametricFamily& cubic_unit_family();
const ParametricFamily& pythagorean_family();
const ParametricFamily& pythagorean_scaled_family();
/// Looks up "cubic-unit", "pythagorean" or "pythagorean-scaled".
const ParametricFamily& family_by_name(const std::string& name);

/// Distinct tuples generated by the family with every |coordinate| <= N.
/// Arity 1 and 2 only.
std::uint64_t family_count_in_cube(const ParametricFamily& family, std::uint64_t side);

/// Distinct Pythagorean triples (legs sorted, then hypotenuse) produced by the
/// three-parameter map with every coordinate <= N.
std::uint64_t pythagorean_scaled_distinct(std::uint64_t side);

}  // namespace dioph
