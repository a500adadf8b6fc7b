// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/bernoulli.hpp"

#include <stdexcept>
#include <vector>

namespace iwk {

mpq_class bernoulli_plus(long n) {
  if (n < 0) throw std::invalid_argument("bernoulli index must be >= 0");
  // Akiyama-Tanigawa
  std::vector<mpq_class> a(n + 1);
  for (long m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, m + 1);
    for (long j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
  }
  return a[0];
}

mpq_class bernoulli(long n) {
  mpq_class b = bernoulli_plus(n);
  return n == 1 ? mpq_class(-b) : b;
}

mpq_class zeta_neg_int(long j) {
  if (j < 1) throw std::invalid_argument("zeta_neg_int needs j >= 1");
  mpq_class r = -bernoulli(j + 1) / (j + 1);
  r.canonicalize();
  return r;
}

mpq_class kubota_leopoldt_target(long p, long c, long j) {
  mpz_class pj, cj;
  mpz_ui_pow_ui(pj.get_mpz_t(), p, j);
  mpz_ui_pow_ui(cj.get_mpz_t(), c, j + 1);
  mpq_class r = mpq_class(1 - pj) * mpq_class(cj - 1) * bernoulli(j + 1) / (j + 1);
  r.canonicalize();
  return r;
}

}  // namespace iwk
