// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_LINALG_HPP
#define IWK_LINALG_HPP

#include <optional>
#include <vector>

#include "iwk/padic.hpp"

namespace iwk {

using PMatrix = std::vector<std::vector<Padic>>;

PMatrix identity_matrix(const PadicContext* ctx, long n);
PMatrix mat_mul(const PMatrix& a, const PMatrix& b);
PMatrix mat_add(const PMatrix& a, const PMatrix& b);
PMatrix mat_scale(const PMatrix& a, const Padic& s);
Padic determinant(const PMatrix& a);
// Throws PrecisionError when a pivot vanishes at the working precision.
PMatrix mat_inverse(const PMatrix& a);
// Solves a x = b for a with at least as many rows as columns.  Pivots are
// chosen by least valuation; returns nullopt if the leftover rows do not
// vanish, i.e. b is not in the column span at the attained precision.
std::optional<std::vector<Padic>> solve_consistent(PMatrix a,
                                                   std::vector<Padic> b);

}  // namespace iwk

#endif
