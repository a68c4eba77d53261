#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dioph {

/// One right-hand-side monomial a * x^k, with a >= 1 and k >= 1.
struct Term {
  std::uint32_t coefficient = 1;
  std::uint32_t exponent = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Left-hand side `x1`.
struct ExplicitLinear {
  friend bool operator==(const ExplicitLinear&, const ExplicitLinear&) = default;
};

/// Left-hand side `x1^k`, k >= 2.
struct HomogeneousPower {
  std::uint32_t k = 2;
  friend bool operator==(const HomogeneousPower&, const HomogeneousPower&) = default;
};

using LhsKind = std::variant<ExplicitLinear, HomogeneousPower>;

class EquationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EquationSyntaxError : public EquationError {
 public:
  EquationSyntaxError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class EquationSemanticError : public EquationError {
 public:
  using EquationError::EquationError;
};

/// x1 (or x1^k) = a2 x2^k2 + ... + as xs^ks over the natural numbers.
///
/// Construction validates the invariants: at least one right-hand term,
/// positive coefficients and exponents, and for a power left-hand side every
/// right-hand term equal to 1 * x^k with the same k.
class DiagonalEquation {
 public:
  DiagonalEquation(LhsKind lhs, std::vector<Term> rhs);

  static DiagonalEquation explicit_linear(std::vector<Term> rhs);
  static DiagonalEquation homogeneous(std::uint32_t k, std::size_t rhs_terms);

  const LhsKind& lhs() const noexcept { return lhs_; }
  const std::vector<Term>& rhs() const noexcept { return rhs_; }

  bool is_homogeneous() const noexcept { return std::holds_alternative<HomogeneousPower>(lhs_); }
  /// 1 for an explicit left-hand side.
  std::uint32_t lhs_exponent() const noexcept;
  /// Total variable count s = 1 + rhs().size().
  std::size_t variables() const noexcept { return rhs_.size() + 1; }

  friend bool operator==(const DiagonalEquation&, const DiagonalEquation&) = default;

 private:
  LhsKind lhs_;
  std::vector<Term> rhs_;
};

struct ExplicitEqualPowers {
  std::size_t s = 0;
  std::uint32_t k = 0;
  friend bool operator==(const ExplicitEqualPowers&, const ExplicitEqualPowers&) = default;
};

/// Explicit equations whose terms differ in exponent, or carry a coefficient > 1.
struct ExplicitMixed {
  std::size_t s = 0;
  std::vector<std::uint32_t> exponents;
  bool weighted = false;  // some coefficient exceeds 1
  friend bool operator==(const ExplicitMixed&, const ExplicitMixed&) = default;
};

struct HomogeneousEqualPowers {
  std::size_t s = 0;
  std::uint32_t k = 0;
  friend bool operator==(const HomogeneousEqualPowers&, const HomogeneousEqualPowers&) = default;
};

using EquationFamily = std::variant<ExplicitEqualPowers, ExplicitMixed, HomogeneousEqualPowers>;

/// Grammar: lhs "=" term ("+" term)*, lhs := "x1" | "x1^" INT,
/// term := [INT "*"] "x" INT ["^" INT]. Whitespace is insignificant and the
/// right-hand variables must be numbered 2, 3, ... in order.
DiagonalEquation parse_equation(std::string_view text);

std::string render(const DiagonalEquation& eq);

EquationFamily classify(const DiagonalEquation& eq);

/// e.g. "ExplicitMixed(4,[2,3,5])"; weighted families get a trailing "*".
std::string describe(const EquationFamily& family);

}  // namespace dioph
