#pragma once

#include <vector>

#include "fmtk/structure.hpp"

namespace fmtk {

// Graphs use one symmetric, loop-free binary predicate E. Linear orders and grids use
// the reflexive order le.

/// Guard for H_n / G_n: above this n the generators throw GuardExceeded unless
/// `allow_large` is set.
inline constexpr int kHnGuard = 2;

Vocabulary graph_vocabulary();
Vocabulary order_vocabulary();

/// Linear order with n >= 1 elements 0 < 1 < ... < n-1.
Structure make_linear_order(int n);
/// Path of length n: n+1 vertices 0 - 1 - ... - n.
Structure make_path(int n);
/// Cycle on n >= 3 vertices.
Structure make_cycle(int n);
/// Disjoint union of `copies` >= 1 copies of make_path(n).
Structure make_path_copies(int copies, int n);
/// H_n = disjoint union over i = 0..3^n of n copies of P_i, in increasing i.
Structure make_Hn(int n, bool allow_large = false);
/// G_n = C_{3^n} followed by H_n.
Structure make_Gn(int n, bool allow_large = false);
/// Tensor product of linear orders of the given sizes.
Structure make_grid(const std::vector<int>& dims);

/// 3^e.
long long pow3(int e);

}  // namespace fmtk
