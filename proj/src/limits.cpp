#include "gerbeforge/limits.hpp"

#include <cstdlib>
#include <string>

namespace gerbeforge {

namespace {

Limits load_limits() {
  Limits l;
  if (const char* env = std::getenv("GERBEFORGE_MAX_ORDER")) {
    try {
      int v = std::stoi(env);
      if (v > 0) {
        l.max_group_order = v;
        l.max_automorphism_order = v;
        l.max_character_table_order = v;
      }
    } catch (const std::exception&) {
    }
  }
  return l;
}

}  // namespace

const Limits& limits() {
  static const Limits instance = load_limits();
  return instance;
}

}  // namespace gerbeforge
