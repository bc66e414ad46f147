#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/group.hpp"
#include "gerbeforge/report.hpp"

using namespace gerbeforge;

TEST_SUITE("cli-workbench") {
  TEST_CASE("checks decide the verdict") {
    Report r;
    CHECK(r.passed());
    CHECK(r.expect("equal", 3, 3));
    CHECK_FALSE(r.expect("different", "Z/2", "Z/4"));
    CHECK(r.failures() == 1);
    CHECK_FALSE(r.passed());
    const auto j = r.to_json();
    CHECK(j["passed"] == false);
    CHECK(j["checks"][1]["expected"] == "Z/2");
    CHECK_FALSE(j.contains("timing"));
    CHECK(r.to_json(true).contains("timing"));
  }

  TEST_CASE("floats are rounded at 1e-12, without negative zero") {
    const nlohmann::json j = {{"x", 0.1 + 0.2}, {"z", -1e-15}, {"n", {1.0000000000004, 7}}};
    const auto r = rounded(j);
    CHECK(r["x"].get<double>() == 0.3);
    CHECK_FALSE(std::signbit(r["z"].get<double>()));
    CHECK(r["n"][0].get<double>() == 1.0);
    CHECK(r["n"][1] == 7);
    CHECK(rounded(r) == r);
  }

  TEST_CASE("inputs digest") {
    // FNV-1a of the empty object "{}"
    CHECK(inputs_digest(nlohmann::json::object()) == "08f44b07b5901a25");
    CHECK(inputs_digest({{"a", 1}}).size() == 16);
    CHECK(inputs_digest({{"a", 1}}) != inputs_digest({{"a", 2}}));
    CHECK(inputs_digest({{"a", 1}, {"b", 2}}) == inputs_digest({{"b", 2}, {"a", 1}}));
  }

  TEST_CASE("catalog listing is sorted and names every battery") {
    const auto listing = catalog_listing();
    const auto groups = listing["groups"].get<std::vector<std::string>>();
    const auto names = listing["batteries"].get<std::vector<std::string>>();
    CHECK(std::is_sorted(groups.begin(), groups.end()));
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(std::count(groups.begin(), groups.end(), "cyclic n") == 1);
    CHECK(std::count(names.begin(), names.end(), "exact-diagram") == 1);
    CHECK(listing == catalog_listing());
    std::vector<int> criteria;
    for (const auto& b : batteries()) criteria.push_back(b.criterion);
    std::sort(criteria.begin(), criteria.end());
    CHECK(criteria == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  }

  TEST_CASE("batteries are reproducible and reject unknown names") {
    const auto a = run_battery("cyclic-triviality", 5), b = run_battery("cyclic-triviality", 5);
    CHECK(a.passed());
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.inputs["seed"] == 5);
    CHECK_THROWS_AS(run_battery("no-such-battery"), InvalidInput);
  }
}
