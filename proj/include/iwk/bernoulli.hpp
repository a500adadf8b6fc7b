// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_BERNOULLI_HPP
#define IWK_BERNOULLI_HPP

#include <gmpxx.h>

namespace iwk {

// B_n with B_1 = +1/2 (generating function t e^t / (e^t - 1)).
mpq_class bernoulli_plus(long n);
// B_n with B_1 = -1/2.
mpq_class bernoulli(long n);
// zeta(-j) = -B_{j+1}/(j+1), j >= 1.
mpq_class zeta_neg_int(long j);
// (1 - p^j)(c^{j+1} - 1) B_{j+1}/(j+1)
mpq_class kubota_leopoldt_target(long p, long c, long j);

}  // namespace iwk

#endif
