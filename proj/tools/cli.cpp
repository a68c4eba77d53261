#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "dioph/asymptotics.hpp"
#include "dioph/equation.hpp"
#include "dioph/grid.hpp"
#include "dioph/hypercube.hpp"
#include "dioph/parametric.hpp"
#include "dioph/power_tables.hpp"
#include "dioph/report.hpp"

namespace dioph::cli {

namespace {

/// Bad flag combinations detected after CLI11 has accepted the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string eq;
  std::uint64_t n = 0;
  std::string grid;
  std::string backend = "auto";
  std::string format = "csv";
  std::string out;
  unsigned workers = 1;
  std::uint64_t memory_budget = Limits{}.memory_budget;
  std::string catalog;
  std::uint64_t min_n = 1;
  std::optional<double> tolerance;
  bool list = false;
  bool nondecreasing = false;
  std::uint32_t k = 2;
  std::uint32_t t = 1;
  std::uint64_t p = 0;
  std::string route = "auto";
  std::string family;
  std::string manifest;
  std::string preset = "small";
  std::string json_path;
  bool timing = false;
  bool lint = false;
  std::string report_format = "table";
};

Limits limits_of(const Options& o) { return Limits{o.memory_budget, std::max(1u, o.workers)}; }

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + o.out);
  file << text;
}

DiagonalEquation require_equation(const Options& o) {
  if (o.eq.empty()) throw UsageError("--eq is required");
  return parse_equation(o.eq);
}

std::vector<std::uint64_t> require_grid(const Options& o) {
  if (o.grid.empty()) throw UsageError("--grid is required");
  try {
    return parse_grid(o.grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void require_format(const Options& o, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), o.format) == allowed.end()) {
    std::string names;
    for (auto a : allowed) names += (names.empty() ? "" : "|") + std::string(a);
    throw UsageError("--format must be one of " + names);
  }
}

Backend default_backend(const DiagonalEquation& eq) {
  return eq.is_homogeneous() ? Backend::MeetInMiddle : Backend::Table;
}

/// Runs `body` with the requested backend. "auto" picks by equation shape and
/// follows one fallback hint if the first choice is inapplicable.
template <typename Body>
auto with_backend(const Options& o, const DiagonalEquation& eq, Backend& used, Body&& body) {
  if (o.backend != "auto") {
    try {
      used = parse_backend(o.backend);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return body(used);
  }
  used = default_backend(eq);
  try {
    return body(used);
  } catch (const BackendInapplicable& e) {
    used = e.fallback();
    return body(used);
  }
}

const BoundCatalog& catalog_of(const Options& o, std::optional<BoundCatalog>& storage) {
  if (o.catalog.empty()) return BoundCatalog::builtin();
  storage.emplace(BoundCatalog::from_file(o.catalog));
  return *storage;
}

std::string counts_json(std::span<const CountPoint> points) {
  std::string s = "[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    s += (i ? ", [" : "[") + std::to_string(points[i].side) + ", " + to_string(points[i].count) + "]";
  }
  return s + "]";
}

std::string prediction_json(const std::optional<BoundPrediction>& p) {
  if (!p) return "null";
  std::string s = "{\"exp\": " + json_quote(p->exponent.to_string()) +
                  ", \"exp_value\": " + fixed6(p->exponent.to_double()) +
                  ", \"eps\": " + (p->epsilon ? "true" : "false");
  if (p->leading_constant) s += ", \"const\": " + fixed6(*p->leading_constant);
  return s + ", \"row\": " + json_quote(p->row_id) + ", \"source\": " + json_quote(p->source_tag()) + "}";
}

std::string fit_json(const FitReport& f) {
  return "{\"slope\": " + fixed6(f.slope) + ", \"stderr\": " + fixed6(f.slope_stderr) + ", \"r2\": " +
         fixed6(f.r_squared) + ", \"intercept\": " + fixed6(f.intercept) +
         ", \"points\": " + std::to_string(f.points_used) + "}";
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string s = "\"";
  for (char c : text) s += c == '"' ? std::string("\"\"") : std::string(1, c);
  return s + "\"";
}

// ---- subcommands ---------------------------------------------------------

std::string cmd_count(const Options& o) {
  require_format(o, {"csv", "json"});
  const auto eq = require_equation(o);
  if (o.n == 0) throw UsageError("--n must be given and >= 1");
  if (o.list) {
    const auto solutions = list_solutions(eq, o.n);
    std::ostringstream s;
    for (std::size_t i = 1; i <= eq.variables(); ++i) s << (i > 1 ? "," : "") << 'x' << i;
    s << '\n';
    for (const auto& row : solutions) {
      for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << row[i];
      s << '\n';
    }
    return s.str();
  }
  Backend used = Backend::Enumerate;
  Count value = 0;
  if (o.nondecreasing) {
    value = count_nondecreasing(eq, o.n);
  } else {
    value = with_backend(o, eq, used, [&](Backend b) { return count_in_cube(eq, o.n, b, limits_of(o)); });
  }
  if (o.format == "json") {
    return "{\"eq\": " + json_quote(render(eq)) + ", \"n\": " + std::to_string(o.n) +
           ", \"backend\": " + json_quote(o.nondecreasing ? "nondecreasing" : std::string(to_string(used))) +
           ", \"count\": " + to_string(value) + "}\n";
  }
  return to_string(value) + "\n";
}

CountSeries run_sweep(const Options& o, const DiagonalEquation& eq) {
  const auto grid = require_grid(o);
  Backend used = Backend::Table;
  return with_backend(o, eq, used, [&](Backend b) { return sweep(eq, grid, b, limits_of(o)); });
}

std::string cmd_sweep(const Options& o) {
  require_format(o, {"csv", "json"});
  const auto eq = require_equation(o);
  const auto series = run_sweep(o, eq);
  if (o.format == "json") {
    return "{\"eq\": " + json_quote(render(eq)) + ", \"family\": " + json_quote(describe(classify(eq))) +
           ", \"backend\": " + json_quote(to_string(series.backend)) + ", \"counts\": " + counts_json(series.points) +
           "}\n";
  }
  std::string s = "N,count\n";
  for (const auto& p : series.points) s += std::to_string(p.side) + "," + to_string(p.count) + "\n";
  return s;
}

std::string cmd_fit(const Options& o) {
  require_format(o, {"csv", "json"});
  const auto eq = require_equation(o);
  const auto series = run_sweep(o, eq);
  const auto fit = fit_exponent(series, o.min_n);
  if (o.format == "json") {
    return "{\"eq\": " + json_quote(render(eq)) + ", \"backend\": " + json_quote(to_string(series.backend)) +
           ", \"fitted\": " + fit_json(fit) + ", \"counts\": " + counts_json(series.points) + "}\n";
  }
  return "slope,stderr,r2,intercept,points\n" + fixed6(fit.slope) + "," + fixed6(fit.slope_stderr) + "," +
         fixed6(fit.r_squared) + "," + fixed6(fit.intercept) + "," + std::to_string(fit.points_used) + "\n";
}

std::string cmd_predict(const Options& o) {
  require_format(o, {"csv", "json"});
  const auto eq = require_equation(o);
  std::optional<BoundCatalog> storage;
  const auto family = classify(eq);
  const auto prediction = catalog_of(o, storage).predict(family);
  if (o.format == "json") {
    return "{\"eq\": " + json_quote(render(eq)) + ", \"family\": " + json_quote(describe(family)) +
           ", \"predicted\": " + prediction_json(prediction) + "}\n";
  }
  std::string s = "family,exponent,exponent_value,epsilon,constant,row,source\n" + csv_field(describe(family)) + ",";
  if (!prediction) return s + "none,,,,,\n";
  return s + prediction->exponent.to_string() + "," + fixed6(prediction->exponent.to_double()) + "," +
         (prediction->epsilon ? "true" : "false") + "," +
         (prediction->leading_constant ? fixed6(*prediction->leading_constant) : std::string()) + "," +
         prediction->row_id + "," + csv_field(prediction->source_tag()) + "\n";
}

std::string cmd_check(const Options& o) {
  require_format(o, {"csv", "json"});
  const auto eq = require_equation(o);
  std::optional<BoundCatalog> storage;
  const auto family = classify(eq);
  const auto prediction = catalog_of(o, storage).predict(family);
  if (!prediction) throw std::runtime_error("no catalog prediction covers " + describe(family));
  const auto series = run_sweep(o, eq);
  const auto fit = fit_exponent(series, o.min_n);
  const auto verdict = check_bound(fit, *prediction, o.tolerance);
  if (o.format == "json") {
    return "{\"eq\": " + json_quote(render(eq)) + ", \"family\": " + json_quote(describe(family)) +
           ", \"backend\": " + json_quote(to_string(series.backend)) + ", \"predicted\": " +
           prediction_json(prediction) + ", \"fitted\": " + fit_json(fit) + ", \"tolerance\": " +
           fixed6(verdict.tolerance) + ", \"verdict\": " + json_quote(to_string(verdict.kind)) +
           ", \"margin\": " + fixed6(verdict.margin) + ", \"counts\": " + counts_json(series.points) + "}\n";
  }
  return "family,exponent,epsilon,slope,stderr,r2,tolerance,margin,verdict,source\n" + csv_field(describe(family)) +
         "," + prediction->exponent.to_string() + "," + (prediction->epsilon ? "true" : "false") + "," +
         fixed6(fit.slope) + "," + fixed6(fit.slope_stderr) + "," + fixed6(fit.r_squared) + "," +
         fixed6(verdict.tolerance) + "," + fixed6(verdict.margin) + "," + std::string(to_string(verdict.kind)) + "," +
         csv_field(prediction->source_tag()) + "\n";
}

MomentRoute parse_route(const std::string& name) {
  if (name == "auto") return MomentRoute::Automatic;
  if (name == "dense") return MomentRoute::DenseTable;
  if (name == "sorted") return MomentRoute::SortedSums;
  throw UsageError("--route must be auto|dense|sorted");
}

std::string cmd_hua(const Options& o) {
  require_format(o, {"csv", "json"});
  if (o.k < 1 || o.t < 1) throw UsageError("--k and --t must be >= 1");
  std::vector<std::uint64_t> bases;
  if (!o.grid.empty()) {
    if (o.p != 0) throw UsageError("give either --p or --grid");
    bases = require_grid(o);
  } else {
    if (o.p == 0) throw UsageError("--p or --grid is required");
    bases = {o.p};
  }
  const auto route = parse_route(o.route);
  std::vector<CountPoint> points;
  for (const auto p : bases) points.push_back({p, even_moment(o.k, o.t, p, limits_of(o), route)});

  if (o.format == "json") {
    std::string s = "{\"k\": " + std::to_string(o.k) + ", \"t\": " + std::to_string(o.t) +
                    ", \"moments\": " + counts_json(points);
    if (points.size() >= 3) s += ", \"fitted\": " + fit_json(fit_exponent(std::span<const CountPoint>(points)));
    return s + "}\n";
  }
  if (o.grid.empty()) return to_string(points.front().count) + "\n";
  std::string s = "P,moment\n";
  for (const auto& p : points) s += std::to_string(p.side) + "," + to_string(p.count) + "\n";
  return s;
}

std::string cmd_parametric(const Options& o) {
  require_format(o, {"csv", "json"});
  if (o.family.empty()) throw UsageError("--family is required");
  const ParametricFamily* family = nullptr;
  try {
    family = &family_by_name(o.family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<std::uint64_t> sides;
  if (!o.grid.empty()) {
    if (o.n != 0) throw UsageError("give either --n or --grid");
    sides = require_grid(o);
  } else {
    if (o.n == 0) throw UsageError("--n or --grid is required");
    sides = {o.n};
  }
  const bool pythagorean = family->name == "pythagorean";
  const auto count_of = [&](std::uint64_t side) -> std::uint64_t {
    if (family->arity > 2) return pythagorean_scaled_distinct(side);
    return family_count_in_cube(*family, side);
  };

  std::vector<CountPoint> points;
  for (const auto side : sides) points.push_back({side, count_of(side)});

  // Euclid's map covers one orientation of primitive-form triples; the full
  // ordered count of the same equation is shown beside it.
  std::vector<Count> ordered;
  if (pythagorean) {
    const auto eq = parse_equation("x1^2 = x2^2 + x3^2");
    const auto series = sweep(eq, sides, Backend::MeetInMiddle, limits_of(o));
    for (const auto& p : series.points) ordered.push_back(p.count);
  }

  if (o.format == "json") {
    std::string s = "{\"family\": " + json_quote(family->name) + ", \"counts\": " + counts_json(points);
    if (pythagorean) {
      s += ", \"sector\": [";
      for (std::size_t i = 0; i < sides.size(); ++i) s += (i ? ", " : "") + std::to_string(sector_count(sides[i]));
      s += "], \"ordered\": [";
      for (std::size_t i = 0; i < sides.size(); ++i) s += (i ? ", " : "") + to_string(ordered[i]);
      s += "]";
    }
    if (points.size() >= 3) s += ", \"fitted\": " + fit_json(fit_exponent(std::span<const CountPoint>(points)));
    return s + "}\n";
  }
  if (o.grid.empty()) return to_string(points.front().count) + "\n";
  std::string s = pythagorean ? "N,count,sector_count,ordered_count\n" : "N,count\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    s += std::to_string(points[i].side) + "," + to_string(points[i].count);
    if (pythagorean) s += "," + std::to_string(sector_count(sides[i])) + "," + to_string(ordered[i]);
    s += "\n";
  }
  return s;
}

std::string cmd_report(const Options& o, std::ostream& err) {
  if (o.report_format != "table" && o.report_format != "json") throw UsageError("--format must be one of table|json");
  std::optional<BoundCatalog> storage;
  const auto& catalog = catalog_of(o, storage);
  const auto manifest = o.manifest.empty() ? SuiteManifest::builtin() : SuiteManifest::from_file(o.manifest);

  const auto gaps = coverage_gaps(catalog, manifest);
  for (const auto& id : gaps) err << "dioph: warning: catalog row " << id << " has no suite entry or exclusion\n";
  if (o.lint) {
    if (!gaps.empty()) throw std::runtime_error(std::to_string(gaps.size()) + " catalog rows lack suite coverage");
    return "coverage ok: " + std::to_string(catalog.rows().size()) + " catalog rows, " +
           std::to_string(manifest.entries.size()) + " entries, " + std::to_string(manifest.excluded.size()) +
           " excluded\n";
  }

  const auto report = run_suite(manifest, o.preset, limits_of(o), catalog);
  const auto json = report_json(report, o.timing);
  if (!o.json_path.empty()) {
    std::ofstream file(o.json_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + o.json_path);
    file << json;
  }
  return o.report_format == "json" ? json : report_table(report);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact hypercube counts for diagonal Diophantine equations and growth-bound checks", "dioph"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
    sub->add_option("--workers", o.workers, "Worker threads")->envname("DIOPH_WORKERS")->check(CLI::Range(1u, 1024u));
    sub->add_option("--memory-budget", o.memory_budget, "Largest table, in entries")
        ->envname("DIOPH_MEMORY_BUDGET")
        ->check(CLI::PositiveNumber);
  };
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv|json")->envname("DIOPH_FORMAT");
  };
  const auto add_eq = [&](CLI::App* sub) {
    sub->add_option("--eq", o.eq, "Equation, e.g. \"x1 = x2^2 + x3^2\"");
  };
  const auto add_backend = [&](CLI::App* sub) {
    sub->add_option("--backend", o.backend, "auto|enumerate|table|mitm")->envname("DIOPH_BACKEND");
  };
  const auto add_catalog = [&](CLI::App* sub) {
    sub->add_option("--catalog", o.catalog, "Bound catalog JSON (default: bundled)")->envname("DIOPH_CATALOG");
  };

  auto* count = app.add_subcommand("count", "Exact number of solutions in [1,N]^s");
  add_eq(count);
  count->add_option("--n", o.n, "Cube side N");
  add_backend(count);
  add_format(count);
  count->add_flag("--list", o.list, "List every solution (N <= 100)");
  count->add_flag("--nondecreasing", o.nondecreasing, "Count only x2 <= x3 <= ... <= xs");
  add_common(count);

  auto* sweep_cmd = app.add_subcommand("sweep", "Counts over a grid of N");
  add_eq(sweep_cmd);
  sweep_cmd->add_option("--grid", o.grid, "start:stop:factor or a comma list");
  add_backend(sweep_cmd);
  add_format(sweep_cmd);
  add_common(sweep_cmd);

  auto* fit = app.add_subcommand("fit", "Log-log slope of the counts over a grid");
  add_eq(fit);
  fit->add_option("--grid", o.grid, "start:stop:factor or a comma list");
  fit->add_option("--min-n", o.min_n, "Ignore N below this");
  add_backend(fit);
  add_format(fit);
  add_common(fit);

  auto* predict_cmd = app.add_subcommand("predict", "Cataloged growth exponent for an equation");
  add_eq(predict_cmd);
  add_catalog(predict_cmd);
  add_format(predict_cmd);
  add_common(predict_cmd);

  auto* check = app.add_subcommand("check", "Fit the counts and rule on the cataloged exponent");
  add_eq(check);
  check->add_option("--grid", o.grid, "start:stop:factor or a comma list");
  check->add_option("--min-n", o.min_n, "Ignore N below this");
  check->add_option("--tolerance", o.tolerance, "Override the verdict tolerance");
  add_backend(check);
  add_catalog(check);
  add_format(check);
  add_common(check);

  auto* hua = app.add_subcommand("hua", "Even moments of the Weyl sum, counted exactly");
  hua->add_option("--k", o.k, "Power");
  hua->add_option("--t", o.t, "Half the moment order (moment 2t)");
  hua->add_option("--p", o.p, "Largest base P");
  hua->add_option("--grid", o.grid, "Grid of P values");
  hua->add_option("--route", o.route, "auto|dense|sorted");
  add_format(hua);
  add_common(hua);

  auto* parametric = app.add_subcommand("parametric", "Count tuples of a parametric family inside |x| <= N");
  parametric->add_option("--family", o.family, "cubic-unit|pythagorean|pythagorean-scaled");
  parametric->add_option("--n", o.n, "Box side N");
  parametric->add_option("--grid", o.grid, "Grid of N values");
  add_format(parametric);
  add_common(parametric);

  auto* report = app.add_subcommand("report", "Run the bundled suite and print the report");
  report->add_option("--manifest", o.manifest, "Suite manifest JSON (default: bundled)")->envname("DIOPH_MANIFEST");
  report->add_option("--preset", o.preset, "small|medium|large")->envname("DIOPH_PRESET");
  report->add_option("--json", o.json_path, "Also write the JSON report here");
  report->add_flag("--timing", o.timing, "Include wall time in the JSON report");
  report->add_flag("--lint", o.lint, "Only check that every catalog row is covered");
  add_catalog(report);
  add_common(report);
  report->add_option("--format", o.report_format, "table|json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::string text;
    if (count->parsed()) text = cmd_count(o);
    else if (sweep_cmd->parsed()) text = cmd_sweep(o);
    else if (fit->parsed()) text = cmd_fit(o);
    else if (predict_cmd->parsed()) text = cmd_predict(o);
    else if (check->parsed()) text = cmd_check(o);
    else if (hua->parsed()) text = cmd_hua(o);
    else if (parametric->parsed()) text = cmd_parametric(o);
    else if (report->parsed()) text = cmd_report(o, err);
    emit(o, text, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "dioph: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EquationSyntaxError& e) {
    err << "dioph: usage error: equation " << e.what() << '\n';
    return kExitUsage;
  } catch (const EquationError& e) {
    err << "dioph: usage error: equation: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BackendInapplicable& e) {
    err << "dioph: execution error: backend: " << e.what() << '\n';
    return kExitExecution;
  } catch (const MemoryBudgetExceeded& e) {
    err << "dioph: execution error: memory: " << e.what() << '\n';
    return kExitExecution;
  } catch (const std::exception& e) {
    err << "dioph: execution error: " << e.what() << '\n';
    return kExitExecution;
  }
}

}  // namespace dioph::cli
