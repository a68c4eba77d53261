#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/equation.hpp"
#include "dioph/hypercube.hpp"
#include "dioph/rational.hpp"

namespace dioph {

/// Predicted growth of the cube count: count << N^exponent (+ epsilon when
/// the bound carries an arbitrarily small slack).
struct BoundPrediction {
  Rational exponent;
  bool epsilon = false;
  std::optional<double> leading_constant;
  std::string row_id;
  std::vector<std::string> sources;
  std::string applicability;
  std::string note;

  /// Sources joined by ", ".
  std::string source_tag() const;
};

/// One row of the bound catalog. `when` and `exponent` are expressions over
/// s, k (equal-power families only), terms (= s - 1) and sum_inv_k.
struct CatalogRow {
  std::string id;
  std::string family;  // explicit-equal | explicit-mixed | homogeneous-equal
  std::string when;    // empty: always applies to the family
  std::vector<std::vector<std::uint32_t>> exponent_sets;  // explicit-mixed: sorted exponent lists
  std::string exponent;
  bool epsilon = false;
  std::vector<std::string> gamma_product;  // leading constant = prod Gamma(q)
  std::vector<std::string> sources;
  std::string applicability;
  std::string note;
};

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundCatalog {
 public:
  explicit BoundCatalog(std::vector<CatalogRow> rows);

  static const BoundCatalog& builtin();
  static BoundCatalog from_json(std::string_view text);
  static BoundCatalog from_file(const std::string& path);

  const std::vector<CatalogRow>& rows() const noexcept { return rows_; }

  /// First matching row wins. Weighted explicit families fall back to their
  /// unit-coefficient counterpart (raising a coefficient only removes
  /// solutions from the cube). nullopt when no row covers the family.
  std::optional<BoundPrediction> predict(const EquationFamily& family) const;

 private:
  std::vector<CatalogRow> rows_;
};

std::optional<BoundPrediction> predict(const EquationFamily& family);

/// Gamma(3/2) Gamma(4/3) Gamma(7/6), evaluated with std::tgamma.
double gamma_product_236();

/// n^(1/k - 1) / ((N^(1/k) - 1) k): chance that a sum of k-th powers near n
/// is itself a k-th power. Requires N >= 2 and 1 <= n <= N.
double probability_weight(std::uint64_t n, std::uint64_t side, std::uint32_t k);

/// Sum of probability_weight over n = 1..N (compensated summation).
long double probability_mass(std::uint64_t side, std::uint32_t k);

struct FitReport {
  double slope = 0;
  double intercept = 0;  // natural log of the implied constant
  double r_squared = 0;
  double slope_stderr = 0;
  std::size_t points_used = 0;
};

class FitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Least squares of log(count) on log(N), ignoring zero counts and N < min_side.
FitReport fit_exponent(std::span<const CountPoint> points, std::uint64_t min_side = 1);
FitReport fit_exponent(const CountSeries& series, std::uint64_t min_side = 1);
/// Same fit on raw positive (x, y) samples.
FitReport fit_power_law(std::span<const double> x, std::span<const double> y);

enum class VerdictKind { Consistent, Violated, Inconclusive };

std::string_view to_string(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  double margin = 0;     // exponent + tolerance - slope
  double tolerance = 0;  // the tolerance actually applied
};

/// 0.10, or 0.15 when the prediction carries epsilon.
double default_tolerance(const BoundPrediction& prediction);

/// Consistent: slope <= exponent + tol. Violated: slope - 2 stderr > exponent + tol.
/// Otherwise Inconclusive.
Verdict check_bound(const FitReport& fit, const BoundPrediction& prediction,
                    std::optional<double> tolerance = std::nullopt);

}  // namespace dioph
