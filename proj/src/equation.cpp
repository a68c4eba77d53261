#include "dioph/equation.hpp"

#include <cctype>
#include <sstream>

namespace dioph {

EquationSyntaxError::EquationSyntaxError(std::size_t position, const std::string& message)
    : EquationError("syntax error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

DiagonalEquation::DiagonalEquation(LhsKind lhs, std::vector<Term> rhs)
    : lhs_(lhs), rhs_(std::move(rhs)) {
  if (rhs_.empty()) throw EquationSemanticError("equation needs at least one right-hand term (s >= 2)");
  for (std::size_t i = 0; i < rhs_.size(); ++i) {
    const auto& t = rhs_[i];
    if (t.coefficient == 0) {
      throw EquationSemanticError("coefficient of x" + std::to_string(i + 2) + " must be positive");
    }
    if (t.exponent == 0) {
      throw EquationSemanticError("exponent of x" + std::to_string(i + 2) + " must be positive");
    }
  }
  if (const auto* power = std::get_if<HomogeneousPower>(&lhs_)) {
    if (power->k < 2) throw EquationSemanticError("power left-hand side needs k >= 2 (use x1 for k = 1)");
    for (std::size_t i = 0; i < rhs_.size(); ++i) {
      if (rhs_[i].exponent != power->k) {
        throw EquationSemanticError("power left-hand side x1^" + std::to_string(power->k) +
                                    " requires every right-hand exponent to equal " +
                                    std::to_string(power->k) + " (x" + std::to_string(i + 2) + " has " +
                                    std::to_string(rhs_[i].exponent) + ")");
      }
      if (rhs_[i].coefficient != 1) {
        throw EquationSemanticError("power left-hand side requires unit coefficients (x" +
                                    std::to_string(i + 2) + " has " + std::to_string(rhs_[i].coefficient) +
                                    ")");
      }
    }
  }
}

DiagonalEquation DiagonalEquation::explicit_linear(std::vector<Term> rhs) {
  return DiagonalEquation(ExplicitLinear{}, std::move(rhs));
}

DiagonalEquation DiagonalEquation::homogeneous(std::uint32_t k, std::size_t rhs_terms) {
  return DiagonalEquation(HomogeneousPower{k}, std::vector<Term>(rhs_terms, Term{1, k}));
}

std::uint32_t DiagonalEquation::lhs_exponent() const noexcept {
  if (const auto* power = std::get_if<HomogeneousPower>(&lhs_)) return power->k;
  return 1;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  DiagonalEquation parse() {
    expect_variable(1);
    std::uint32_t lhs_k = 1;
    if (accept('^')) lhs_k = integer("left-hand exponent");
    expect('=');
    std::vector<Term> rhs;
    do {
      rhs.push_back(term(rhs.size() + 2));
    } while (accept('+'));
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");

    if (lhs_k == 0) throw EquationSemanticError("left-hand exponent must be positive");
    if (lhs_k == 1) return DiagonalEquation(ExplicitLinear{}, std::move(rhs));
    return DiagonalEquation(HomogeneousPower{lhs_k}, std::move(rhs));
  }

 private:
  Term term(std::size_t expected_index) {
    skip_space();
    Term t;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      t.coefficient = integer("coefficient");
      expect('*');
    }
    expect_variable(expected_index);
    if (accept('^')) t.exponent = integer("exponent");
    return t;
  }

  void expect_variable(std::size_t index) {
    skip_space();
    const std::size_t start = pos_;
    expect('x');
    const auto got = integer("variable index");
    if (got != index) {
      throw EquationSyntaxError(start, "expected variable x" + std::to_string(index) + ", found x" +
                                           std::to_string(got));
    }
  }

  std::uint32_t integer(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > UINT32_MAX) throw EquationSyntaxError(start, std::string(what) + " is too large");
      ++pos_;
    }
    if (pos_ == start) fail(std::string("expected ") + what);
    return static_cast<std::uint32_t>(value);
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    if (pos_ >= text_.size()) throw EquationSyntaxError(pos_, message + " (end of input)");
    throw EquationSyntaxError(pos_, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DiagonalEquation parse_equation(std::string_view text) { return Parser(text).parse(); }

std::string render(const DiagonalEquation& eq) {
  std::ostringstream out;
  out << "x1";
  if (eq.is_homogeneous()) out << '^' << eq.lhs_exponent();
  out << " = ";
  for (std::size_t i = 0; i < eq.rhs().size(); ++i) {
    const auto& t = eq.rhs()[i];
    if (i > 0) out << " + ";
    if (t.coefficient != 1) out << t.coefficient << '*';
    out << 'x' << (i + 2);
    if (t.exponent != 1) out << '^' << t.exponent;
  }
  return out.str();
}

EquationFamily classify(const DiagonalEquation& eq) {
  const std::size_t s = eq.variables();
  if (eq.is_homogeneous()) return HomogeneousEqualPowers{s, eq.lhs_exponent()};

  bool unit = true;
  bool equal = true;
  std::vector<std::uint32_t> exponents;
  for (const auto& t : eq.rhs()) {
    unit = unit && t.coefficient == 1;
    equal = equal && t.exponent == eq.rhs().front().exponent;
    exponents.push_back(t.exponent);
  }
  if (unit && equal) return ExplicitEqualPowers{s, exponents.front()};
  return ExplicitMixed{s, std::move(exponents), !unit};
}

std::string describe(const EquationFamily& family) {
  std::ostringstream out;
  if (const auto* f = std::get_if<ExplicitEqualPowers>(&family)) {
    out << "ExplicitEqualPowers(" << f->s << ',' << f->k << ')';
  } else if (const auto* m = std::get_if<ExplicitMixed>(&family)) {
    out << "ExplicitMixed(" << m->s << ",[";
    for (std::size_t i = 0; i < m->exponents.size(); ++i) out << (i ? "," : "") << m->exponents[i];
    out << "])";
    if (m->weighted) out << '*';
  } else {
    const auto& h = std::get<HomogeneousEqualPowers>(family);
    out << "HomogeneousEqualPowers(" << h.s << ',' << h.k << ')';
  }
  return out.str();
}

}  // namespace dioph
