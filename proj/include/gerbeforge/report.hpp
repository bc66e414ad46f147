/** @file report.hpp
 *  Machine-readable reports: an echo of the command, a digest of its inputs, results, and a
 *  list of named checks. Named batteries bundle the counting identities into one report each.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace gerbeforge {

struct Check {
  std::string name;
  nlohmann::json expected, actual;
  bool pass = false;
  nlohmann::json to_json() const;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<Check> checks;
  double seconds = 0;

  /// Records a check that passes when expected == actual.
  bool expect(std::string name, nlohmann::json expected, nlohmann::json actual);
  bool passed() const;
  std::size_t failures() const;
  /// Floats rounded at 1e-12; timing only on request, so that reports are reproducible.
  nlohmann::json to_json(bool with_timing = false) const;
};

/// FNV-1a over the compact dump of the inputs, as 16 hex digits.
std::string inputs_digest(const nlohmann::json& inputs);

/// Rounds every floating-point leaf to a multiple of 1e-12.
nlohmann::json rounded(const nlohmann::json& j);

struct BatteryInfo {
  std::string name;
  int criterion;
  std::string summary;
};

/// Sorted by name.
const std::vector<BatteryInfo>& batteries();

/// Runs a named battery; unknown names throw InvalidInput.
Report run_battery(const std::string& name, std::uint64_t seed = 0);

/// Catalog group patterns and battery names, both sorted.
nlohmann::json catalog_listing();

}  // namespace gerbeforge
