// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace iwk {

PMatrix identity_matrix(const PadicContext* ctx, long n) {
  PMatrix m(n, std::vector<Padic>(n, Padic::zero(ctx)));
  for (long i = 0; i < n; ++i) m[i][i] = Padic::exact(ctx, 1);
  return m;
}

PMatrix mat_mul(const PMatrix& a, const PMatrix& b) {
  if (a.empty()) return {};
  const PadicContext* ctx = a[0][0].ctx();
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  PMatrix c(n, std::vector<Padic>(m, Padic::zero(ctx)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

PMatrix mat_add(const PMatrix& a, const PMatrix& b) {
  PMatrix c = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

PMatrix mat_scale(const PMatrix& a, const Padic& s) {
  PMatrix c = a;
  for (auto& row : c)
    for (auto& x : row) x = x * s;
  return c;
}

namespace {

// Row index >= from with least valuation in column col, or -1.
long pick_pivot(const PMatrix& a, size_t col, size_t from) {
  long best = -1;
  long bestv = kInfPrec;
  for (size_t r = from; r < a.size(); ++r) {
    if (a[r][col].is_zero()) continue;
    if (best < 0 || a[r][col].valuation() < bestv) {
      best = static_cast<long>(r);
      bestv = a[r][col].valuation();
    }
  }
  return best;
}

}  // namespace

Padic determinant(const PMatrix& a0) {
  if (a0.empty()) throw std::invalid_argument("determinant of empty matrix");
  PMatrix a = a0;
  const PadicContext* ctx = a[0][0].ctx();
  size_t n = a.size();
  Padic det = Padic::exact(ctx, 1);
  for (size_t c = 0; c < n; ++c) {
    long piv = pick_pivot(a, c, c);
    if (piv < 0) {
      // Column is zero at precision: det is a zero whose precision is the
      // best bound available from this column.
      long lo = kInfPrec;
      for (size_t r = c; r < n; ++r)
        lo = std::min(lo, a[r][c].absprec());
      return det * Padic::zero(ctx, lo);
    }
    if (static_cast<size_t>(piv) != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det = det * a[c][c];
    Padic inv = a[c][c].inverse();
    for (size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_exact_zero()) continue;
      Padic f = a[r][c] * inv;
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

PMatrix mat_inverse(const PMatrix& a0) {
  PMatrix a = a0;
  size_t n = a.size();
  const PadicContext* ctx = a[0][0].ctx();
  PMatrix inv = identity_matrix(ctx, static_cast<long>(n));
  for (size_t c = 0; c < n; ++c) {
    long piv = pick_pivot(a, c, c);
    if (piv < 0) throw PrecisionError("matrix is singular at precision");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Padic pinv = a[c][c].inverse();
    for (size_t k = 0; k < n; ++k) {
      a[c][k] = a[c][k] * pinv;
      inv[c][k] = inv[c][k] * pinv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_exact_zero()) continue;
      Padic f = a[r][c];
      for (size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

std::optional<std::vector<Padic>> solve_consistent(PMatrix a,
                                                   std::vector<Padic> b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  if (rows < cols) throw std::invalid_argument("underdetermined system");
  for (size_t c = 0; c < cols; ++c) {
    long piv = pick_pivot(a, c, c);
    if (piv < 0) throw PrecisionError("system is rank deficient at precision");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    Padic pinv = a[c][c].inverse();
    for (size_t k = c; k < cols; ++k) a[c][k] = a[c][k] * pinv;
    b[c] = b[c] * pinv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == c || a[r][c].is_exact_zero()) continue;
      Padic f = a[r][c];
      for (size_t k = c; k < cols; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (size_t r = cols; r < rows; ++r)
    if (!b[r].is_zero()) return std::nullopt;
  b.resize(cols);
  return b;
}

}  // namespace iwk
