#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dioph {

/// Exact fraction with 64-bit numerator and positive denominator, always in
/// lowest terms. Arithmetic overflow throws std::overflow_error.
class Rational {
 public:
  Rational(std::int64_t numerator = 0, std::int64_t denominator = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "5/2", or "3" for integers.
  std::string to_string() const;
  /// Accepts "p", "p/q", optionally signed.
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

class ExpressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ExpressionScope = std::map<std::string, Rational, std::less<>>;

/// Evaluates an arithmetic/boolean expression over exact rationals.
/// Operators: + - * / ^ (integer exponent), comparisons, && || !, parentheses.
/// Booleans are 1 and 0.
Rational evaluate_expression(std::string_view expression, const ExpressionScope& scope);

}  // namespace dioph
