#include "dioph/report.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dioph/embedded_data.hpp"
#include "dioph/grid.hpp"

namespace dioph {

SuiteManifest SuiteManifest::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
  }
  SuiteManifest manifest;
  try {
    for (const auto& item : doc.at("entries")) {
      SuiteEntry entry;
      entry.id = item.at("id").get<std::string>();
      entry.equation = item.at("eq").get<std::string>();
      entry.grids = item.at("grid").get<std::map<std::string, std::string>>();
      entry.backend = parse_backend(item.value("backend", "table"));
      entry.catalog_row = item.at("catalog_row").get<std::string>();
      if (item.contains("tolerance") && !item.at("tolerance").is_null()) {
        entry.tolerance = item.at("tolerance").get<double>();
      }
      entry.min_side = item.value("min_n", std::uint64_t{1});
      manifest.entries.push_back(std::move(entry));
    }
    if (doc.contains("excluded")) {
      for (const auto& item : doc.at("excluded")) {
        manifest.excluded.push_back({item.at("catalog_row").get<std::string>(), item.at("reason").get<std::string>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(std::string("malformed manifest: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ManifestError(std::string("malformed manifest: ") + e.what());
  }

  std::set<std::string> ids;
  for (const auto& entry : manifest.entries) {
    if (!ids.insert(entry.id).second) throw ManifestError("duplicate entry id " + entry.id);
    try {
      (void)parse_equation(entry.equation);
    } catch (const EquationError& e) {
      throw ManifestError("entry " + entry.id + ": " + e.what());
    }
    for (const auto& [preset, spec] : entry.grids) {
      std::vector<std::uint64_t> grid;
      try {
        grid = parse_grid(spec);
      } catch (const std::invalid_argument& e) {
        throw ManifestError("entry " + entry.id + " preset " + preset + ": " + e.what());
      }
      if (grid.size() < 4) {
        throw ManifestError("entry " + entry.id + " preset " + preset + ": fit grids need at least 4 points");
      }
    }
  }
  return manifest;
}

SuiteManifest SuiteManifest::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

SuiteManifest SuiteManifest::builtin() { return from_json(embedded::report_suite_json()); }

std::vector<std::string> coverage_gaps(const BoundCatalog& catalog, const SuiteManifest& manifest) {
  std::set<std::string> covered;
  for (const auto& e : manifest.entries) covered.insert(e.catalog_row);
  for (const auto& x : manifest.excluded) covered.insert(x.catalog_row);
  std::vector<std::string> gaps;
  for (const auto& row : catalog.rows()) {
    if (!covered.count(row.id)) gaps.push_back(row.id);
  }
  return gaps;
}

std::size_t SuiteReport::tally(VerdictKind kind) const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.verdict.kind == kind;
  return n;
}

namespace {

ReportRow run_entry(const SuiteEntry& entry, const std::string& preset, const Limits& limits,
                    const BoundCatalog& catalog) {
  const auto grid_spec = entry.grids.find(preset);
  if (grid_spec == entry.grids.end()) throw ManifestError("entry " + entry.id + " has no grid for preset " + preset);

  const auto started = std::chrono::steady_clock::now();
  ReportRow row;
  row.id = entry.id;
  const DiagonalEquation eq = parse_equation(entry.equation);
  row.equation = render(eq);
  const EquationFamily family = classify(eq);
  row.family = describe(family);
  row.backend = entry.backend;

  auto prediction = catalog.predict(family);
  if (!prediction) throw ManifestError("entry " + entry.id + ": no catalog prediction for " + row.family);
  if (prediction->row_id != entry.catalog_row) {
    throw ManifestError("entry " + entry.id + " expects catalog row " + entry.catalog_row + " but " + row.family +
                        " resolves to " + prediction->row_id);
  }
  row.prediction = *prediction;

  const auto grid = parse_grid(grid_spec->second);
  row.points = sweep(eq, grid, entry.backend, limits).points;
  row.fit = fit_exponent(std::span<const CountPoint>(row.points), entry.min_side);
  row.verdict = check_bound(row.fit, row.prediction, entry.tolerance);
  row.milliseconds =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return row;
}

}  // namespace

SuiteReport run_suite(const SuiteManifest& manifest, const std::string& preset, const Limits& limits,
                      const BoundCatalog& catalog) {
  SuiteReport report;
  report.preset = preset;
  report.rows.resize(manifest.entries.size());
  const std::size_t count = manifest.entries.size();
  const unsigned workers = std::max(1u, std::min<unsigned>(limits.workers, static_cast<unsigned>(count)));

  // concurrent rows each get a single-threaded engine
  Limits row_limits = limits;
  if (workers > 1) row_limits.workers = 1;

  std::vector<std::exception_ptr> errors(count);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < count; i += workers) {
      try {
        report.rows[i] = run_entry(manifest.entries[i], preset, row_limits, catalog);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

std::string json_quote(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string report_json(const SuiteReport& report, bool include_timing) {
  std::ostringstream out;
  out << "{\n  \"preset\": " << json_quote(report.preset) << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    out << (i ? ",\n" : "\n") << "    {\n";
    out << "      \"id\": " << json_quote(r.id) << ",\n";
    out << "      \"eq\": " << json_quote(r.equation) << ",\n";
    out << "      \"family\": " << json_quote(r.family) << ",\n";
    out << "      \"backend\": " << json_quote(to_string(r.backend)) << ",\n";
    out << "      \"predicted\": {\"exp\": " << json_quote(r.prediction.exponent.to_string())
        << ", \"exp_value\": " << fixed6(r.prediction.exponent.to_double())
        << ", \"eps\": " << (r.prediction.epsilon ? "true" : "false");
    if (r.prediction.leading_constant) out << ", \"const\": " << fixed6(*r.prediction.leading_constant);
    out << ", \"row\": " << json_quote(r.prediction.row_id) << ", \"source\": " << json_quote(r.prediction.source_tag())
        << "},\n";
    out << "      \"fitted\": {\"slope\": " << fixed6(r.fit.slope) << ", \"stderr\": " << fixed6(r.fit.slope_stderr)
        << ", \"r2\": " << fixed6(r.fit.r_squared) << ", \"intercept\": " << fixed6(r.fit.intercept)
        << ", \"points\": " << r.fit.points_used << "},\n";
    out << "      \"tolerance\": " << fixed6(r.verdict.tolerance) << ",\n";
    out << "      \"verdict\": " << json_quote(to_string(r.verdict.kind)) << ",\n";
    out << "      \"margin\": " << fixed6(r.verdict.margin) << ",\n";
    out << "      \"counts\": [";
    for (std::size_t j = 0; j < r.points.size(); ++j) {
      out << (j ? ", " : "") << '[' << r.points[j].side << ", " << to_string(r.points[j].count) << ']';
    }
    out << "]";
    if (include_timing) out << ",\n      \"ms\": " << static_cast<std::uint64_t>(r.milliseconds + 0.5);
    out << "\n    }";
  }
  out << "\n  ],\n  \"summary\": {\"rows\": " << report.rows.size()
      << ", \"consistent\": " << report.tally(VerdictKind::Consistent)
      << ", \"violated\": " << report.tally(VerdictKind::Violated)
      << ", \"inconclusive\": " << report.tally(VerdictKind::Inconclusive) << "}\n}\n";
  return out.str();
}

std::string report_table(const SuiteReport& report) {
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-22s %-44s %-12s %-16s %-9s %-13s %9s\n", "id", "equation", "predicted",
                "slope +- stderr", "r2", "verdict", "ms");
  out << line;
  out << std::string(131, '-') << '\n';
  for (const auto& r : report.rows) {
    std::string predicted = r.prediction.exponent.to_string() + (r.prediction.epsilon ? "+eps" : "");
    std::snprintf(line, sizeof line, "%-22s %-44s %-12s %7.3f +- %-5.3f %-9.6f %-13s %9.0f\n", r.id.c_str(),
                  r.equation.c_str(), predicted.c_str(), r.fit.slope, r.fit.slope_stderr, r.fit.r_squared,
                  std::string(to_string(r.verdict.kind)).c_str(), r.milliseconds);
    out << line;
    if (r.verdict.kind == VerdictKind::Violated) {
      out << "    challenged bound: " << r.prediction.source_tag() << " (N^" << r.prediction.exponent.to_string()
          << (r.prediction.epsilon ? "+eps" : "") << ", tolerance " << fixed6(r.verdict.tolerance) << ")\n";
    }
    if (r.prediction.leading_constant) {
      out << "    leading constant " << fixed6(*r.prediction.leading_constant) << ", observed count/N at N="
          << r.points.back().side << ": "
          << fixed6(static_cast<double>(to_long_double(r.points.back().count) /
                                        static_cast<long double>(r.points.back().side)))
          << '\n';
    }
  }
  out << "\nsummary (" << report.preset << "): " << report.rows.size() << " rows, "
      << report.tally(VerdictKind::Consistent) << " consistent, " << report.tally(VerdictKind::Violated)
      << " violated, " << report.tally(VerdictKind::Inconclusive) << " inconclusive\n";
  out << "counts are ordered tuples in [1,N]^s; permutation factors such as (s-1)! only move the intercept\n";
  return out.str();
}

}  // namespace dioph
