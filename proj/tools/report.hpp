#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qdr/engine.hpp"
#include "qdr/identities.hpp"
#include "qdr/naturality.hpp"

namespace qdr::cli {

nlohmann::json witness(const std::string& identity, int n, const std::string& text);
nlohmann::json witness(const Violation& v);

nlohmann::json pages_json(const SpectralPages& p);
// E_infinity dims grouped by total degree m + n, degrees 0..D.
std::vector<int> pages_total_dims(const SpectralPages& p, int D);

void add_suite(nlohmann::json& rep, const SuiteReport& s);

struct CompareResult {
  nlohmann::json diff;  // full compare report
  int exit_code = 0;
};
CompareResult compare_reports(const nlohmann::json& a, const nlohmann::json& b);

// CSV rendering of the tables in a report.
std::string to_csv(const nlohmann::json& rep);

}  // namespace qdr::cli
