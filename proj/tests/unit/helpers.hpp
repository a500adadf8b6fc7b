// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_TEST_HELPERS_HPP
#define IWK_TEST_HELPERS_HPP

#include <gmpxx.h>

#include "iwk/cyclotomic.hpp"
#include "iwk/padic.hpp"
#include "iwk/series.hpp"

namespace testing {

// x agrees with the integer m modulo p^k.
inline bool congruent(const iwk::Padic& x, const mpz_class& m, long k) {
  iwk::Padic d = x - iwk::Padic::exact(x.ctx(), m);
  return d.is_zero() ? d.absprec() >= k : d.valuation() >= k;
}

inline bool congruent(const iwk::Padic& x, const iwk::Padic& y, long k) {
  iwk::Padic d = x - y;
  return d.is_zero() ? d.absprec() >= k : d.valuation() >= k;
}

inline iwk::PSeries poly(const iwk::PadicContext* ctx, std::initializer_list<long> c) {
  std::vector<iwk::Padic> v;
  for (long x : c) v.push_back(iwk::Padic::exact(ctx, x));
  return iwk::PSeries(std::move(v));
}

// a - b vanishes and is known to at least k digits.
inline bool close(const iwk::CycloElt& a, const iwk::CycloElt& b, long k) {
  iwk::CycloElt d = a - b;
  return d.is_zero() && d.min_absprec() >= k;
}

}  // namespace testing

#endif
