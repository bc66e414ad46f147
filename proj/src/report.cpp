#include "gerbeforge/report.hpp"

#include <cmath>
#include <cstdio>

#include "gerbeforge/group.hpp"

namespace gerbeforge {

nlohmann::json Check::to_json() const { return {{"name", name}, {"expected", expected}, {"actual", actual}, {"pass", pass}}; }

bool Report::expect(std::string name, nlohmann::json expected, nlohmann::json actual) {
  const bool pass = expected == actual;
  checks.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  return pass;
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += !c.pass;
  return n;
}

nlohmann::json Report::to_json(bool with_timing) const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) checks_json.push_back(c.to_json());
  nlohmann::json out = {{"command", command},
                        {"seed", seed},
                        {"inputs", inputs},
                        {"inputs_digest", inputs_digest(inputs)},
                        {"results", results},
                        {"checks", checks_json},
                        {"passed", passed()}};
  if (with_timing) out["timing"] = {{"seconds", seconds}};
  return rounded(out);
}

std::string inputs_digest(const nlohmann::json& inputs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : inputs.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json rounded(const nlohmann::json& j) {
  if (j.is_number_float()) {
    const double r = std::round(j.get<double>() * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r;  // no negative zero
  }
  if (j.is_array() || j.is_object()) {
    nlohmann::json out = j;
    for (auto& v : out) v = rounded(v);
    return out;
  }
  return j;
}

nlohmann::json catalog_listing() {
  nlohmann::json names = nlohmann::json::array();
  for (const auto& b : batteries()) names.push_back(b.name);
  return {{"groups", catalog_names()}, {"batteries", names}};
}

}  // namespace gerbeforge
