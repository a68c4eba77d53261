#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/asymptotics.hpp"
#include "dioph/hypercube.hpp"
#include "dioph/limits.hpp"

namespace dioph {

/// One fit-and-check row of the bundled suite.
struct SuiteEntry {
  std::string id;
  std::string equation;
  std::map<std::string, std::string> grids;  // preset name -> grid spec
  Backend backend = Backend::Table;
  std::string catalog_row;  // id of the catalog row the equation must resolve to
  std::optional<double> tolerance;
  std::uint64_t min_side = 1;
};

struct ExcludedRow {
  std::string catalog_row;
  std::string reason;
};

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SuiteManifest {
  std::vector<SuiteEntry> entries;
  std::vector<ExcludedRow> excluded;

  static SuiteManifest builtin();
  /// Validates that every equation parses and every grid has >= 4 points.
  static SuiteManifest from_json(std::string_view text);
  static SuiteManifest from_file(const std::string& path);
};

/// Catalog row ids that appear neither in an entry nor in the excluded list.
std::vector<std::string> coverage_gaps(const BoundCatalog& catalog, const SuiteManifest& manifest);

struct ReportRow {
  std::string id;
  std::string equation;
  std::string family;
  Backend backend = Backend::Table;
  BoundPrediction prediction;
  std::vector<CountPoint> points;
  FitReport fit;
  Verdict verdict;
  double milliseconds = 0;
};

struct SuiteReport {
  std::string preset;
  std::vector<ReportRow> rows;

  std::size_t tally(VerdictKind kind) const;
};

/// Runs every entry at the given preset. Rows are spread over
/// limits.workers threads; the report keeps manifest order.
SuiteReport run_suite(const SuiteManifest& manifest, const std::string& preset, const Limits& limits = {},
                      const BoundCatalog& catalog = BoundCatalog::builtin());

/// Fixed key order and 6-digit reals, so identical runs give identical bytes.
/// Wall time ("ms") is only emitted when include_timing is set.
std::string report_json(const SuiteReport& report, bool include_timing = false);

/// Human-readable table; Violated rows name the challenged sources.
std::string report_table(const SuiteReport& report);

/// Minimal JSON string escaping (quotes included).
std::string json_quote(std::string_view text);
/// "%.6f" formatting used by every real in machine-readable output.
std::string fixed6(double value);

}  // namespace dioph
