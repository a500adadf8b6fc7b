// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "iwk/unramified.hpp"

using namespace iwk;

TEST_SUITE("unramified") {
  TEST_CASE("frobenius fixes Z_p and has order f") {
    auto* ctx = PadicContext::get(5, 15);
    std::mt19937_64 rng(7);
    for (int f : {2, 3}) {
      auto F = UnramifiedField::create(ctx, f, 11);
      UnramifiedElt z = UnramifiedElt::from_padic(F, Padic::exact(ctx, 123));
      CHECK(z.frobenius().equals(z));
      for (int t = 0; t < 5; ++t) {
        UnramifiedElt x = UnramifiedElt::random_integer(F, rng);
        CHECK(x.frobenius_power(f).equals(x));
        CHECK((x * x).frobenius().equals(x.frobenius() * x.frobenius()));
      }
    }
  }

  TEST_CASE("frobenius on teichmuller lifts") {
    auto* ctx = PadicContext::get(3, 12);
    auto F = UnramifiedField::create(ctx, 2, 5);
    UnramifiedElt g = teichmuller(UnramifiedElt::from_residue(F, {1, 1}));
    CHECK(g.frobenius().equals(g.pow(3)));
    CHECK(g.pow(8).equals(UnramifiedElt::one(F)));
  }

  TEST_CASE("additive frobenius equation") {
    auto* ctx = PadicContext::get(5, 12);
    auto F = UnramifiedField::create(ctx, 2, 3);
    CHECK(solve_frobenius_additive(UnramifiedElt::zero(F)).is_zero());
    UnramifiedElt g = UnramifiedElt::generator(F);
    UnramifiedElt x = g - g.frobenius();
    UnramifiedElt y = solve_frobenius_additive(x);
    CHECK((y - y.frobenius()).equals(x));
  }

  TEST_CASE("multiplicative frobenius equation") {
    auto* ctx = PadicContext::get(5, 12);
    auto F = UnramifiedField::create(ctx, 2, 3);
    UnramifiedElt one = UnramifiedElt::one(F);
    CHECK(solve_frobenius_multiplicative(one).equals(one));
    std::mt19937_64 rng(9);
    for (int t = 0; t < 5; ++t) {
      UnramifiedElt w = UnramifiedElt::random_integer(F, rng);
      if (w.val_lower() != 0) continue;
      UnramifiedElt alpha = w.frobenius() * w.inverse();
      UnramifiedElt u = solve_frobenius_multiplicative(alpha);
      CHECK(u.frobenius().equals(alpha * u));
    }
  }

  TEST_CASE("norm and inverse") {
    auto* ctx = PadicContext::get(7, 10);
    auto F = UnramifiedField::create(ctx, 3, 1);
    UnramifiedElt g = UnramifiedElt::generator(F) + UnramifiedElt::one(F);
    CHECK((g * g.inverse()).equals(UnramifiedElt::one(F)));
    Padic n = g.norm();
    UnramifiedElt prod = g * g.frobenius() * g.frobenius_power(2);
    CHECK(prod.equals(UnramifiedElt::from_padic(F, n)));
  }
}
