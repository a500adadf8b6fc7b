// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "iwk/crystalline.hpp"

using namespace iwk;

TEST_SUITE("crystalline") {
  TEST_CASE("gamma star") {
    CHECK(gamma_star(1) == 1);
    CHECK(gamma_star(0) == 1);
    CHECK(gamma_star(-2) == mpq_class(1, 2));
    CHECK(gamma_star(-3) == mpq_class(-1, 6));
    CHECK(gamma_star(4) == 6);
    CHECK(gamma_factor({1}) == 1);
    CHECK(gamma_factor({3}) == mpq_class(1, 2));
    CHECK(gamma_factor({}) == 1);
    CHECK(gamma_factor({3, 3, -1}) == mpq_class(-1, 4));
  }

  TEST_CASE("euler operators") {
    auto* ctx = PadicContext::get(5, 20);
    CrysModule t1 = CrysModule::tate(ctx, 1);
    EulerOperators e = euler_operators(t1);
    CHECK(!e.bad_one);
    CHECK(e.bad_pinv);
    UnramifiedElt expect = UnramifiedElt::from_padic(t1.field(),
                                                     Padic::from_rational(ctx, mpq_class(4, 5)));
    CHECK(e.det_one.equals(expect));
    EulerOperators e0 = euler_operators(CrysModule::tate(ctx, 0));
    CHECK(e0.bad_one);
    CHECK(!e0.bad_pinv);
    EulerOperators e2 = euler_operators(CrysModule::tate(ctx, 0), 2);
    CHECK(!e2.bad_one);
    CHECK(!e2.bad_pinv);
  }

  TEST_CASE("det phi valuation") {
    auto* ctx = PadicContext::get(5, 20);
    std::mt19937_64 rng(8);
    auto F = UnramifiedField::create(ctx, 2, 1);
    for (int t = 0; t < 10; ++t) {
      std::vector<long> w{-2, 0, 3, static_cast<long>(t % 4)};
      CrysModule M = CrysModule::random_admissible(F, rng, w);
      CHECK(M.m() == 1 + t % 4);
      CHECK(umat_det(M.phi()).val_lower() == -M.m());
    }
    CrysModule s = CrysModule::direct_sum(CrysModule::tate(ctx, 2), CrysModule::tate(ctx, -1));
    CHECK(s.dim() == 2);
    CHECK(s.m() == 1);
  }

  TEST_CASE("unramified twist") {
    auto* ctx = PadicContext::get(5, 20);
    CrysModule q = CrysModule::tate(ctx, 0);
    TwistedModule same = unramified_twist(q, DeRhamChar{});
    CHECK(same.module.weights() == std::vector<long>{0});
    CHECK(same.period.equals(UnramifiedElt::one(q.field())));
    TwistedModule t = unramified_twist(q, DeRhamChar::chi_power(1));
    CHECK(t.module.weights() == std::vector<long>{1});
    CHECK(t.module.phi_scalar().equals(CrysModule::tate(ctx, 1).phi_scalar()));

    auto F = UnramifiedField::create(ctx, 2, 3);
    UnramifiedElt g = teichmuller(UnramifiedElt::generator(F));
    // sigma(u) = alpha u is solvable in Z_{p^f} only for residues that are (p-1)-th powers
    UnramifiedElt alpha = g.pow(4);
    DeRhamChar eta;
    eta.unram = alpha;
    TwistedModule u = unramified_twist(q, eta);
    CHECK(u.period.frobenius().equals(alpha * u.period));
    CHECK(u.module.phi_scalar().equals(alpha.inverse()));
    DeRhamChar bad;
    bad.unram = g;
    CHECK_THROWS_AS(unramified_twist(q, bad), FrobeniusObstruction);
  }

  TEST_CASE("factorials") {
    auto c = IwasawaContext::create(PadicContext::get(5, 30), 32);
    FactorialsResult r = factorials_check(c, {1}, 0);
    CHECK(r.order == 1);
    CHECK(r.rhs == 1);
    CHECK(r.equal);
    struct Case {
      std::vector<long> w;
      long j;
    };
    for (const Case& k : {Case{{2}, 3}, Case{{1, 1}, 0}, Case{{-2}, 1}, Case{{0, 1}, 0},
                          Case{{-1, 0, 2}, 1}, Case{{3, -1}, -2}}) {
      FactorialsResult f = factorials_check(c, k.w, k.j);
      CHECK(f.equal);
      CHECK(f.agreement >= 22);
    }
  }
}
