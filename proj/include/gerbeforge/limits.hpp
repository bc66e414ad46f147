#pragma once

#include <cstddef>

namespace gerbeforge {

struct Limits {
  int max_group_order = 96;
  int max_automorphism_order = 24;
  int max_character_table_order = 48;
  std::size_t max_matrix_side = 20000;
  std::size_t max_algebra_dim = 2500;
  int max_degree = 4;
};

/// Process-wide limits. GERBEFORGE_MAX_ORDER raises the group-order caps.
const Limits& limits();

}  // namespace gerbeforge
