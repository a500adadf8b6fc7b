// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "iwk/padic.hpp"
#include "oracle.hpp"

using namespace iwk;
using testing::congruent;

TEST_SUITE("padic") {
  TEST_CASE("field operations at capped relative precision") {
    auto* ctx = PadicContext::get(5, 20);
    Padic a = Padic::from_int(ctx, 7), b = Padic::from_int(ctx, 25);
    CHECK(b.valuation() == 2);
    CHECK((a * b).valuation() == 2);
    Padic q = a / b;
    CHECK(q.valuation() == -2);
    CHECK(congruent(q * b, a, 20));
    CHECK((a - a).is_zero());
    CHECK(Padic::exact(ctx, 0).is_exact_zero());
    CHECK(Padic::p_power(ctx, 3).valuation() == 3);
  }

  TEST_CASE("rationals and digits") {
    auto* ctx = PadicContext::get(5, 10);
    Padic x = Padic::from_rational(ctx, mpq_class(-1, 12));
    CHECK(congruent(x, oracle::residue(mpq_class(-1, 12), 5, 10), 10));
    Padic m1 = Padic::exact(ctx, -1);
    auto d = m1.capped(4).unit_digits();
    REQUIRE(d.size() == 4);
    for (unsigned v : d) CHECK(v == 4);
  }

  TEST_CASE("teichmuller") {
    for (unsigned p : {3u, 5u, 7u}) {
      auto* ctx = PadicContext::get(p, 12);
      CHECK(congruent(teichmuller(ctx, 1), 1, 12));
      CHECK(congruent(teichmuller(ctx, p - 1), -1, 12));
      for (long a = 1; a < static_cast<long>(p); ++a)
        CHECK(congruent(teichmuller(ctx, a), oracle::teichmuller(a, p, 12), 12));
    }
    CHECK(congruent(teichmuller(PadicContext::get(5, 2), 2), 7, 2));
  }

  TEST_CASE("logarithm") {
    auto* ctx = PadicContext::get(5, 12);
    CHECK(padic_log(Padic::exact(ctx, 1)).is_zero());
    Padic u = Padic::exact(ctx, 6);
    Padic lhs = padic_log(u.pow(5)), rhs = padic_log(u) * Padic::exact(ctx, 5);
    CHECK(congruent(lhs, rhs, 12));
    auto* c4 = PadicContext::get(5, 4);
    CHECK(congruent(padic_log(Padic::exact(c4, 6)), oracle::log_mod(6, 5, 4), 4));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
      mpz_class a = 1 + 5 * (rng() % 1000);
      CHECK(congruent(padic_log(Padic::exact(ctx, a)), oracle::log_mod(a, 5, 12), 12));
    }
  }

  TEST_CASE("exp inverts log on pZ_p") {
    auto* ctx = PadicContext::get(7, 15);
    Padic x = Padic::exact(ctx, 7 * 13);
    CHECK(congruent(padic_log(padic_exp(x)), x, 14));
  }
}
