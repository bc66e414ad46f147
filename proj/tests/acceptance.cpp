// One line per acceptance criterion: the battery that decides it, its check count, and the verdict.
// Exit status is the number of failing criteria.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>

#include "gerbeforge/report.hpp"

using namespace gerbeforge;

namespace {

const char* tolerance(int criterion) {
  switch (criterion) {
    case 4: return "phases 1e-6, identities exact";
    case 10: return "homomorphism defect 1e-9, rest exact";
    default: return "exact";
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 0;
  auto order = batteries();
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.criterion < b.criterion; });
  int failed = 0;
  for (const auto& info : order) {
    bool pass = false;
    std::string detail;
    try {
      const auto r = run_battery(info.name, seed);
      pass = r.passed();
      detail = std::to_string(r.checks.size() - r.failures()) + "/" + std::to_string(r.checks.size()) + " checks";
      for (const auto& c : r.checks)
        if (!c.pass) detail += "; failed: " + c.name + " (expected " + c.expected.dump() + ", got " + c.actual.dump() + ")";
    } catch (const std::exception& e) {
      detail = std::string("threw: ") + e.what();
    }
    failed += !pass;
    std::printf("criterion %2d  %-4s  %-20s tolerance: %s  [%s]  %s\n", info.criterion, pass ? "PASS" : "FAIL",
                info.name.c_str(), tolerance(info.criterion), detail.c_str(), info.summary.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(order.size()) - failed, order.size());
  return failed;
}
