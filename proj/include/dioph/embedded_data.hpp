#pragma once

#include <string_view>

namespace dioph::embedded {

// Copies of data/bound_catalog.json and data/report_suite.json taken at build time.
std::string_view bound_catalog_json();
std::string_view report_suite_json();

}  // namespace dioph::embedded
