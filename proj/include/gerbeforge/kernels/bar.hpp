#pragma once

#include <cstdint>

#include "gerbeforge/kernels/modmatrix.hpp"

namespace gerbeforge::kernels {

/// Matrix of the normalized bar differential C^n -> C^{n+1} over Z/modulus.
/// Cochain coordinates are (tuple, component) with tuples of non-identity elements
/// encoded big-endian in base order-1; `action` holds order * rank * rank entries
/// (row-major matrix per group element).
ModMatrix assemble_bar_differential(int order, const int* mult, int n, int rank, const std::int64_t* action,
                                    Residue modulus, Execution exec);

/// Matrix of the nerve differential of an action groupoid, C^n -> C^{n+1}, scalar coefficients.
/// Strings are (source point, q_1..q_n) with all q_i non-identity, index point * (order-1)^n + tuple.
/// `act` holds order * points entries.
ModMatrix assemble_nerve_differential(int order, const int* mult, int points, const int* act, int n,
                                      Residue modulus, Execution exec);

}  // namespace gerbeforge::kernels
