#include <optional>
#include <random>

#include "doctest.h"

#include "dioph/equation.hpp"

using namespace dioph;

TEST_CASE("parse: explicit equal powers") {
  const auto eq = parse_equation("x1 = x2^2 + x3^2");
  CHECK_FALSE(eq.is_homogeneous());
  CHECK(eq.rhs() == std::vector<Term>{{1, 2}, {1, 2}});
  CHECK(eq.variables() == 3);
  CHECK(eq.lhs_exponent() == 1);
}

TEST_CASE("parse: homogeneous") {
  const auto eq = parse_equation("x1^2 = x2^2 + x3^2");
  REQUIRE(eq.is_homogeneous());
  CHECK(std::get<HomogeneousPower>(eq.lhs()).k == 2);
  CHECK(eq.rhs() == std::vector<Term>{{1, 2}, {1, 2}});
  CHECK(eq == DiagonalEquation::homogeneous(2, 2));
}

TEST_CASE("parse: coefficient and single term") {
  const auto eq = parse_equation("x1 = 2*x2^3");
  CHECK_FALSE(eq.is_homogeneous());
  CHECK(eq.rhs() == std::vector<Term>{{2, 3}});
  CHECK(eq.variables() == 2);
}

TEST_CASE("parse: missing exponent means 1, whitespace is insignificant") {
  CHECK(parse_equation("x1=x2+3*x3") == DiagonalEquation::explicit_linear({{1, 1}, {3, 1}}));
  CHECK(parse_equation("  x1 =\tx2 ^ 2 +  x3^2 ") == parse_equation("x1 = x2^2 + x3^2"));
  // x1^1 is just the linear left-hand side
  CHECK_FALSE(parse_equation("x1^1 = x2^2").is_homogeneous());
}

TEST_CASE("parse: semantic errors") {
  CHECK_THROWS_AS(parse_equation("x1^2 = x2^2 + x3^3"), EquationSemanticError);
  CHECK_THROWS_AS(parse_equation("x1^2 = 2*x2^2 + x3^2"), EquationSemanticError);
  CHECK_THROWS_AS(parse_equation("x1 = 0*x2^2"), EquationError);
  CHECK_THROWS_AS(parse_equation("x1 = x2^0"), EquationError);
  CHECK_THROWS_AS(DiagonalEquation(ExplicitLinear{}, {}), EquationSemanticError);
  CHECK_THROWS_AS(DiagonalEquation(HomogeneousPower{1}, {{1, 1}}), EquationSemanticError);
}

TEST_CASE("parse: syntax errors carry a position") {
  CHECK_THROWS_AS(parse_equation(""), EquationSyntaxError);
  CHECK_THROWS_AS(parse_equation("x1 = "), EquationSyntaxError);
  CHECK_THROWS_AS(parse_equation("x1 = x2^2 +"), EquationSyntaxError);
  CHECK_THROWS_AS(parse_equation("x1 = x3^2"), EquationSyntaxError);  // indices must start at 2
  CHECK_THROWS_AS(parse_equation("x1 = x2^2 + x4^2"), EquationSyntaxError);
  CHECK_THROWS_AS(parse_equation("x2 = x3^2"), EquationSyntaxError);
  CHECK_THROWS_AS(parse_equation("x1 = x2^2 extra"), EquationSyntaxError);
  CHECK_THROWS_AS(parse_equation("x1 = x2^99999999999"), EquationSyntaxError);
  try {
    parse_equation("x1 = x2^2 $ x3");
    FAIL("expected a syntax error");
  } catch (const EquationSyntaxError& e) {
    CHECK(e.position() == 10);
  }
}

TEST_CASE("render") {
  CHECK(render(parse_equation("x1 = x2^2")) == "x1 = x2^2");
  CHECK(render(parse_equation("x1 = 1*x2^2 + 3*x3^1")) == "x1 = x2^2 + 3*x3");
  CHECK(render(parse_equation("x1^3=x2^3+x3^3")) == "x1^3 = x2^3 + x3^3");
  for (const char* text : {"x1 = x2^2 + x3^2", "x1^2 = x2^2 + x3^2", "x1 = 2*x2^3"}) {
    const auto eq = parse_equation(text);
    CHECK(parse_equation(render(eq)) == eq);
  }
}

TEST_CASE("property: parse(render(eq)) == eq over random equations") {
  std::mt19937_64 rng(20240611);
  auto pick = [&](unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); };
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t s = pick(2, 8);
    std::optional<DiagonalEquation> eq;
    if (pick(0, 3) == 0) {
      eq = DiagonalEquation::homogeneous(pick(2, 6), s - 1);
    } else {
      std::vector<Term> rhs;
      for (std::size_t j = 1; j < s; ++j) rhs.push_back({pick(1, 9), pick(1, 6)});
      eq = DiagonalEquation::explicit_linear(rhs);
    }
    const auto text = render(*eq);
    CHECK_MESSAGE(parse_equation(text) == *eq, text);
  }
}

TEST_CASE("classify and describe") {
  CHECK(classify(parse_equation("x1 = x2^2+x3^2")) == EquationFamily{ExplicitEqualPowers{3, 2}});
  CHECK(classify(parse_equation("x1 = x2^2+x3^3+x4^5")) == EquationFamily{ExplicitMixed{4, {2, 3, 5}, false}});
  CHECK(classify(parse_equation("x1^2 = x2^2+x3^2+x4^2+x5^2+x6^2")) ==
        EquationFamily{HomogeneousEqualPowers{6, 2}});
  CHECK(classify(parse_equation("x1 = 2*x2^2+x3^2")) == EquationFamily{ExplicitMixed{3, {2, 2}, true}});

  CHECK(describe(classify(parse_equation("x1 = x2^2+x3^3+x4^5"))) == "ExplicitMixed(4,[2,3,5])");
  CHECK(describe(classify(parse_equation("x1 = x2^2+x3^2"))) == "ExplicitEqualPowers(3,2)");
  CHECK(describe(classify(parse_equation("x1^3 = x2^3+x3^3"))) == "HomogeneousEqualPowers(3,3)");
  CHECK(describe(classify(parse_equation("x1 = 2*x2^2+x3^2"))) == "ExplicitMixed(3,[2,2])*");
}

TEST_CASE("classify is stable under reordering equal terms") {
  // swapping positions 2 and 3 (both x^3) leaves the family unchanged
  std::vector<Term> terms{{1, 2}, {1, 3}, {1, 3}, {2, 2}};
  const auto reference = classify(DiagonalEquation::explicit_linear(terms));
  std::swap(terms[1], terms[2]);
  CHECK(classify(DiagonalEquation::explicit_linear(terms)) == reference);
  CHECK(classify(DiagonalEquation::homogeneous(3, 4)) == classify(DiagonalEquation::homogeneous(3, 4)));
}
