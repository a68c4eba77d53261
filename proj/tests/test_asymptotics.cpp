#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "dioph/asymptotics.hpp"

using namespace dioph;

namespace {

BoundPrediction need(const EquationFamily& family) {
  auto p = predict(family);
  REQUIRE(p.has_value());
  return *p;
}

BoundPrediction need(const char* eq) { return need(classify(parse_equation(eq))); }

FitReport fit_of(const std::vector<std::uint64_t>& sides, const std::vector<double>& values) {
  std::vector<double> x(sides.begin(), sides.end());
  return fit_power_law(x, values);
}

}  // namespace

TEST_CASE("predict: examples") {
  auto p = need(ExplicitEqualPowers{6, 2});
  CHECK(p.exponent == Rational(5, 2));
  CHECK_FALSE(p.epsilon);
  CHECK_FALSE(p.leading_constant.has_value());

  p = need(HomogeneousEqualPowers{6, 2});
  CHECK(p.exponent == Rational(3, 2));
  CHECK_FALSE(p.epsilon);
  CHECK(p.source_tag().find("Eq (2.36)") != std::string::npos);

  p = need(ExplicitMixed{4, {2, 3, 5}, false});
  CHECK(p.exponent == Rational(31, 30));
  CHECK(p.epsilon);

  p = need(ExplicitMixed{4, {2, 3, 6}, false});
  CHECK(p.exponent == Rational(1));
  CHECK_FALSE(p.epsilon);
  REQUIRE(p.leading_constant.has_value());
  // 12-digit reference value of Gamma(3/2) Gamma(4/3) Gamma(7/6)
  CHECK(std::abs(*p.leading_constant - 0.734180833514) / 0.734180833514 < 1e-6);

  p = need(HomogeneousEqualPowers{3, 2});
  CHECK(p.exponent == Rational(1));
  CHECK(p.epsilon);
}

TEST_CASE("predict: the remaining cataloged cases") {
  CHECK(need("x1 = x2^2 + x3^2").exponent == Rational(3, 2));          // s = 3
  CHECK(need("x1 = x2^3 + x3^3").exponent == Rational(4, 3));
  CHECK(need("x1 = x2^2 + x3^2 + x4^2").exponent == Rational(7, 4));   // s = 4
  CHECK(need("x1 = x2^2 + x3^2 + x4^2 + x5^2").exponent == Rational(2));  // s = 5
  CHECK(need("x1 = x2 + x3 + x4").exponent == Rational(3));            // s - 1 > 2^k with k = 1
  CHECK(need("x1^2 = x2^2 + x3^2 + x4^2").exponent == Rational(5, 4));
  CHECK(need("x1^3 = x2^3 + x3^3 + x4^3").exponent == Rational(5, 6));
  CHECK(need("x1^2 = x2^2 + x3^2 + x4^2 + x5^2").exponent == Rational(3, 2));
  CHECK(need("x1^3 = x2^3 + x3^3").exponent == Rational(2, 3));
  CHECK(need("x1 = x2^2 + x3^3 + x4^4").exponent == Rational(13, 12));
  CHECK(need("x1 = x2^2 + x3^3 + x4^3").exponent == Rational(7, 6));
  // term order does not matter for mixed families
  CHECK(need("x1 = x2^5 + x3^2 + x4^3").row_id == need("x1 = x2^2 + x3^3 + x4^5").row_id);
}

TEST_CASE("predict: no-prediction is a value") {
  CHECK_FALSE(predict(ExplicitEqualPowers{6, 3}).has_value());
  CHECK_FALSE(predict(HomogeneousEqualPowers{4, 4}).has_value());
  CHECK_FALSE(predict(ExplicitMixed{4, {2, 4, 8}, false}).has_value());
}

TEST_CASE("predict: weighted explicit equations inherit the unit-coefficient bound") {
  const auto weighted = need("x1 = 3*x2^2 + x3^2 + x4^2 + x5^2 + x6^2");
  const auto unit = need("x1 = x2^2 + x3^2 + x4^2 + x5^2 + x6^2");
  CHECK(weighted.exponent == unit.exponent);
  CHECK(weighted.row_id == unit.row_id);
  CHECK(weighted.source_tag().find("coefficient domination") != std::string::npos);
  CHECK(need("x1 = 2*x2^2 + x3^3 + x4^5").exponent == Rational(31, 30));
}

TEST_CASE("catalog coverage: every cited case maps to exactly one row") {
  const char* tags[] = {"Assertion 1", "Assertion 2 (s = 3)", "Assertion 2 (s = 4)", "Assertion 2 (s = 5)",
                        "Assertion 3", "Assertion 4",         "Assertion 5",         "Assertion 6",
                        "Assertion 7", "Eq (2.36)",           "Eq (2.42)",           "Eq (2.48)",
                        "Eq (2.49)",   "Eq (2.55)",           "Eq (2.63)",           "Eq (2.66)"};
  for (const char* tag : tags) {
    int rows = 0;
    for (const auto& row : BoundCatalog::builtin().rows()) {
      rows += std::count(row.sources.begin(), row.sources.end(), std::string(tag)) > 0;
    }
    CAPTURE(tag);
    CHECK(rows == 1);
  }
  std::set<std::string> ids;
  for (const auto& row : BoundCatalog::builtin().rows()) CHECK(ids.insert(row.id).second);
}

TEST_CASE("predict is pure") {
  for (int i = 0; i < 3; ++i) {
    const auto a = need(HomogeneousEqualPowers{5, 2});
    const auto b = need(HomogeneousEqualPowers{5, 2});
    CHECK(a.exponent == b.exponent);
    CHECK(a.source_tag() == b.source_tag());
  }
}

TEST_CASE("catalog is data-driven") {
  const auto catalog = BoundCatalog::from_json(R"({"rows": [
    {"id": "custom", "family": "explicit-equal", "when": "s == 6 && k == 3",
     "exponent": "terms/k + 1/3", "epsilon": true, "sources": ["local"]}]})");
  const auto p = catalog.predict(ExplicitEqualPowers{6, 3});
  REQUIRE(p.has_value());
  CHECK(p->exponent == Rational(2));
  CHECK(p->row_id == "custom");
  CHECK_FALSE(catalog.predict(ExplicitEqualPowers{5, 3}).has_value());
  CHECK_THROWS_AS(BoundCatalog::from_json("{"), CatalogError);
  CHECK_THROWS_AS(BoundCatalog::from_json(R"({"rows": [{"id": "x", "family": "nope", "exponent": "1", "sources": []}]})"),
                  CatalogError);
}

TEST_CASE("gamma product") {
  CHECK(gamma_product_236() == doctest::Approx(0.734180833514).epsilon(1e-9));
}

TEST_CASE("probability_weight") {
  CHECK(probability_weight(1, 100, 2) == doctest::Approx(1.0 / 18.0).epsilon(1e-12));
  for (std::uint64_t n : {1u, 7u, 50u}) CHECK(probability_weight(n, 51, 1) == doctest::Approx(1.0 / 50.0));
  CHECK_THROWS_AS(probability_weight(1, 1, 2), std::domain_error);
  CHECK_THROWS_AS(probability_weight(0, 10, 2), std::invalid_argument);
  CHECK_THROWS_AS(probability_weight(11, 10, 2), std::invalid_argument);
  CHECK(probability_weight(3, 100, 3) > 0);
}

TEST_CASE("probability_mass matches a naive sum and tends to 1") {
  for (std::uint32_t k : {2u, 3u}) {
    for (std::uint64_t side : {10u, 1000u, 100000u}) {
      double naive = 0;
      for (std::uint64_t n = 1; n <= side; ++n) naive += probability_weight(n, side, k);
      CHECK(static_cast<double>(probability_mass(side, k)) == doctest::Approx(naive).epsilon(1e-9));
    }
    // residual times N^(1/k) stays bounded, so the residual shrinks like N^(-1/k)
    double previous = 1e300;
    for (std::uint64_t side : {1000u, 10000u, 100000u, 1000000u}) {
      const double residual = std::abs(static_cast<double>(probability_mass(side, k)) - 1.0);
      CHECK(residual < previous);
      CHECK(residual * std::pow(static_cast<double>(side), 1.0 / k) < 5.0);
      previous = residual;
    }
  }
}

TEST_CASE("fit: exact power laws") {
  const std::vector<std::uint64_t> sides{16, 32, 64, 128};
  std::vector<double> squares, triple;
  for (auto n : sides) {
    squares.push_back(static_cast<double>(n * n));
    triple.push_back(3.0 * static_cast<double>(n));
  }
  auto f = fit_of(sides, squares);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.points_used == 4);
  f = fit_of(sides, triple);
  CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.slope_stderr < 1e-9);
}

TEST_CASE("property: fit recovers C * N^e to 1e-9") {
  const std::vector<std::uint64_t> sides{10, 30, 100, 300, 1000, 3000};
  for (double c : {0.01, 1.0, 7.5, 1e6}) {
    for (double e = 0.25; e <= 4.0; e += 0.25) {
      std::vector<double> y;
      for (auto n : sides) y.push_back(c * std::pow(static_cast<double>(n), e));
      const auto f = fit_of(sides, y);
      CHECK(std::abs(f.slope - e) < 1e-9);
      CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(f.r_squared <= 1.0);
    }
  }
}

TEST_CASE("fit: agrees with the closed-form slope on noisy data") {
  const std::vector<double> x{8, 16, 32, 64, 128, 256};
  const std::vector<double> y{5, 13, 24, 61, 110, 260};
  const auto f = fit_power_law(x, y);
  CHECK(f.slope == doctest::Approx(oracle::slope(x, y)).epsilon(1e-12));
  CHECK(f.r_squared > 0.9);
  CHECK(f.r_squared < 1.0);
  CHECK(f.slope_stderr > 0);
}

TEST_CASE("fit_exponent drops zero counts and small sides") {
  const std::vector<CountPoint> pts{{1, 0}, {2, 0}, {4, 16}, {8, 64}, {16, 256}, {32, 1024}};
  auto f = fit_exponent(std::span<const CountPoint>(pts));
  CHECK(f.points_used == 4);
  CHECK(f.slope == doctest::Approx(2.0));
  f = fit_exponent(std::span<const CountPoint>(pts), 8);
  CHECK(f.points_used == 3);
  CHECK_THROWS_AS(fit_exponent(std::span<const CountPoint>(pts), 16), FitError);
  const std::vector<CountPoint> zeros{{1, 0}, {2, 0}, {3, 0}, {4, 0}};
  CHECK_THROWS_AS(fit_exponent(std::span<const CountPoint>(zeros)), FitError);
}

TEST_CASE("check_bound") {
  BoundPrediction five_halves;
  five_halves.exponent = Rational(5, 2);
  BoundPrediction five_quarters;
  five_quarters.exponent = Rational(5, 4);
  five_quarters.epsilon = true;

  FitReport f;
  f.slope = 2.50;
  f.slope_stderr = 0.01;
  auto v = check_bound(f, five_halves, 0.10);
  CHECK(v.kind == VerdictKind::Consistent);
  CHECK(v.margin == doctest::Approx(0.10));

  f.slope = 1.98;
  f.slope_stderr = 0.03;
  v = check_bound(f, five_quarters, 0.15);
  CHECK(v.kind == VerdictKind::Violated);
  CHECK(v.margin == doctest::Approx(1.25 + 0.15 - 1.98));

  f.slope = 1.50;
  f.slope_stderr = 0.40;
  CHECK(check_bound(f, five_quarters).kind == VerdictKind::Inconclusive);

  CHECK(default_tolerance(five_halves) == doctest::Approx(0.10));
  CHECK(default_tolerance(five_quarters) == doctest::Approx(0.15));
  CHECK(check_bound(f, five_quarters).tolerance == doctest::Approx(0.15));
  CHECK(to_string(VerdictKind::Violated) == "Violated");
}

TEST_CASE("property: verdict is invariant under rescaling counts") {
  const std::vector<std::uint64_t> sides{64, 128, 256, 512, 1024};
  const std::vector<double> base{130, 515, 2100, 8200, 33000};
  BoundPrediction p;
  p.exponent = Rational(3, 2);
  p.epsilon = true;
  const auto reference = check_bound(fit_of(sides, base), p);
  for (double scale : {1e-3, 0.5, 2.0, 12345.0}) {
    std::vector<double> scaled;
    for (double v : base) scaled.push_back(v * scale);
    const auto f = fit_of(sides, scaled);
    const auto v = check_bound(f, p);
    CHECK(v.kind == reference.kind);
    CHECK(v.margin == doctest::Approx(reference.margin).epsilon(1e-9));
  }
}
