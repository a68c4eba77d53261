#include "dioph/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dioph/embedded_data.hpp"

namespace dioph {

std::string BoundPrediction::source_tag() const {
  std::string tag;
  for (const auto& s : sources) {
    if (!tag.empty()) tag += ", ";
    tag += s;
  }
  return tag;
}

BoundCatalog::BoundCatalog(std::vector<CatalogRow> rows) : rows_(std::move(rows)) {
  for (const auto& row : rows_) {
    if (row.id.empty()) throw CatalogError("catalog row without id");
    if (row.family != "explicit-equal" && row.family != "explicit-mixed" && row.family != "homogeneous-equal") {
      throw CatalogError("catalog row " + row.id + ": unknown family '" + row.family + "'");
    }
    if (row.exponent.empty()) throw CatalogError("catalog row " + row.id + ": missing exponent");
  }
}

BoundCatalog BoundCatalog::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CatalogError(std::string("catalog is not valid JSON: ") + e.what());
  }
  std::vector<CatalogRow> rows;
  try {
    for (const auto& item : doc.at("rows")) {
      CatalogRow row;
      row.id = item.at("id").get<std::string>();
      row.family = item.at("family").get<std::string>();
      row.when = item.value("when", "");
      if (item.contains("exponent_sets")) {
        for (auto set : item.at("exponent_sets").get<std::vector<std::vector<std::uint32_t>>>()) {
          std::sort(set.begin(), set.end());
          row.exponent_sets.push_back(std::move(set));
        }
      }
      row.exponent = item.at("exponent").get<std::string>();
      row.epsilon = item.value("epsilon", false);
      if (item.contains("leading_constant")) {
        row.gamma_product = item.at("leading_constant").at("gamma_product").get<std::vector<std::string>>();
      }
      row.sources = item.at("sources").get<std::vector<std::string>>();
      row.applicability = item.value("applicability", "");
      row.note = item.value("note", "");
      rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw CatalogError(std::string("malformed catalog: ") + e.what());
  }
  return BoundCatalog(std::move(rows));
}

BoundCatalog BoundCatalog::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

const BoundCatalog& BoundCatalog::builtin() {
  static const BoundCatalog catalog = from_json(embedded::bound_catalog_json());
  return catalog;
}

namespace {

struct FamilyView {
  std::string kind;
  std::size_t s = 0;
  std::optional<std::uint32_t> k;
  std::vector<std::uint32_t> sorted_exponents;
};

FamilyView view_of(const EquationFamily& family) {
  FamilyView v;
  if (const auto* f = std::get_if<ExplicitEqualPowers>(&family)) {
    v = {"explicit-equal", f->s, f->k, std::vector<std::uint32_t>(f->s - 1, f->k)};
  } else if (const auto* m = std::get_if<ExplicitMixed>(&family)) {
    v = {"explicit-mixed", m->s, std::nullopt, m->exponents};
  } else {
    const auto& h = std::get<HomogeneousEqualPowers>(family);
    v = {"homogeneous-equal", h.s, h.k, std::vector<std::uint32_t>(h.s - 1, h.k)};
  }
  std::sort(v.sorted_exponents.begin(), v.sorted_exponents.end());
  return v;
}

double leading_constant(const CatalogRow& row) {
  double product = 1.0;
  for (const auto& q : row.gamma_product) product *= std::tgamma(Rational::parse(q).to_double());
  return product;
}

}  // namespace

std::optional<BoundPrediction> BoundCatalog::predict(const EquationFamily& family) const {
  if (const auto* mixed = std::get_if<ExplicitMixed>(&family); mixed && mixed->weighted) {
    const bool equal = std::all_of(mixed->exponents.begin(), mixed->exponents.end(),
                                   [&](std::uint32_t e) { return e == mixed->exponents.front(); });
    EquationFamily unit = equal ? EquationFamily{ExplicitEqualPowers{mixed->s, mixed->exponents.front()}}
                                : EquationFamily{ExplicitMixed{mixed->s, mixed->exponents, false}};
    auto prediction = predict(unit);
    if (prediction) {
      prediction->sources.push_back("Eq (2.25) coefficient domination");
      prediction->applicability += " (bound of the unit-coefficient equation)";
    }
    return prediction;
  }

  const FamilyView view = view_of(family);
  ExpressionScope scope;
  scope.emplace("s", Rational(static_cast<std::int64_t>(view.s)));
  scope.emplace("terms", Rational(static_cast<std::int64_t>(view.s - 1)));
  if (view.k) scope.emplace("k", Rational(*view.k));
  Rational sum_inv(0);
  for (const auto e : view.sorted_exponents) sum_inv = sum_inv + Rational(1, e);
  scope.emplace("sum_inv_k", sum_inv);

  for (const auto& row : rows_) {
    if (row.family != view.kind) continue;
    if (!row.exponent_sets.empty() &&
        std::find(row.exponent_sets.begin(), row.exponent_sets.end(), view.sorted_exponents) ==
            row.exponent_sets.end()) {
      continue;
    }
    try {
      if (!row.when.empty() && evaluate_expression(row.when, scope) == Rational(0)) continue;
      BoundPrediction p;
      p.exponent = evaluate_expression(row.exponent, scope);
      if (p.exponent <= Rational(0)) {
        throw CatalogError("catalog row " + row.id + " yields a non-positive exponent " + p.exponent.to_string());
      }
      p.epsilon = row.epsilon;
      if (!row.gamma_product.empty()) p.leading_constant = leading_constant(row);
      p.row_id = row.id;
      p.sources = row.sources;
      p.applicability = row.applicability;
      p.note = row.note;
      return p;
    } catch (const ExpressionError& e) {
      throw CatalogError("catalog row " + row.id + ": " + e.what());
    }
  }
  return std::nullopt;
}

std::optional<BoundPrediction> predict(const EquationFamily& family) {
  return BoundCatalog::builtin().predict(family);
}

double gamma_product_236() { return std::tgamma(1.5) * std::tgamma(4.0 / 3.0) * std::tgamma(7.0 / 6.0); }

double probability_weight(std::uint64_t n, std::uint64_t side, std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("probability_weight: k must be >= 1");
  if (side < 2) throw std::domain_error("probability_weight: N must be >= 2 (N = 1 zeroes the denominator)");
  if (n < 1 || n > side) throw std::invalid_argument("probability_weight: n must lie in [1, N]");
  const double inv_k = 1.0 / k;
  const double denominator = (std::pow(static_cast<double>(side), inv_k) - 1.0) * k;
  return std::pow(static_cast<double>(n), inv_k - 1.0) / denominator;
}

long double probability_mass(std::uint64_t side, std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("probability_mass: k must be >= 1");
  if (side < 2) throw std::domain_error("probability_mass: N must be >= 2");
  const long double inv_k = 1.0L / k;
  const long double denominator = (std::pow(static_cast<long double>(side), inv_k) - 1.0L) * k;
  long double sum = 0.0L;
  long double carry = 0.0L;
  for (std::uint64_t n = 1; n <= side; ++n) {
    const long double term = std::pow(static_cast<long double>(n), inv_k - 1.0L) / denominator - carry;
    const long double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum;
}

FitReport fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw FitError("fit: x and y differ in length");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const std::size_t n = lx.size();
  if (n < 3) throw FitError("fit needs at least 3 usable points, got " + std::to_string(n));

  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0;
  double sxy = 0;
  double syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0) throw FitError("fit needs at least two distinct N values");

  FitReport report;
  report.points_used = n;
  report.slope = sxy / sxx;
  report.intercept = my - report.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double residual = ly[i] - (report.intercept + report.slope * lx[i]);
    sse += residual * residual;
  }
  report.r_squared = syy > 0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  report.slope_stderr = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  return report;
}

FitReport fit_exponent(std::span<const CountPoint> points, std::uint64_t min_side) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : points) {
    if (p.side < min_side || p.count == 0) continue;
    x.push_back(static_cast<double>(p.side));
    y.push_back(static_cast<double>(to_long_double(p.count)));
  }
  return fit_power_law(x, y);
}

FitReport fit_exponent(const CountSeries& series, std::uint64_t min_side) {
  return fit_exponent(std::span<const CountPoint>(series.points), min_side);
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Consistent: return "Consistent";
    case VerdictKind::Violated: return "Violated";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double default_tolerance(const BoundPrediction& prediction) { return prediction.epsilon ? 0.15 : 0.10; }

Verdict check_bound(const FitReport& fit, const BoundPrediction& prediction, std::optional<double> tolerance) {
  Verdict v;
  v.tolerance = tolerance.value_or(default_tolerance(prediction));
  const double ceiling = prediction.exponent.to_double() + v.tolerance;
  v.margin = ceiling - fit.slope;
  if (fit.slope <= ceiling) {
    v.kind = VerdictKind::Consistent;
  } else if (fit.slope - 2.0 * fit.slope_stderr > ceiling) {
    v.kind = VerdictKind::Violated;
  } else {
    v.kind = VerdictKind::Inconclusive;
  }
  return v;
}

}  // namespace dioph
