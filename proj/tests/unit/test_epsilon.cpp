// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "helpers.hpp"
#include "iwk/epsilon.hpp"
#include "oracle.hpp"

using namespace iwk;
using testing::close;

namespace {

IwCtx make(unsigned p, long N = 20) { return IwasawaContext::create(PadicContext::get(p, N), 16); }

bool same_coords(const CycloElt& x, const oracle::Cyc& o, long N) {
  if (static_cast<long>(o.size()) != x.dim()) return false;
  for (long i = 0; i < x.dim(); ++i)
    if (!testing::congruent(x.coords()[i], o[i], N)) return false;
  return true;
}

}  // namespace

TEST_SUITE("epsilon") {
  TEST_CASE("quadratic gauss sum for p = 3") {
    auto c = make(3);
    auto* ctx = c->ctx();
    DeRhamChar eta{0, 1, 0, 0, {}};
    CycloElt tau = gauss_sum_power(c, eta, 1);
    CycloElt z = CycloElt::zeta_power(ctx, 1, 1);
    CHECK(close(tau, z - z * z, 20));
    CHECK(close(tau * tau, CycloElt::from_padic(Padic::exact(ctx, -3), 1), 20));
    CHECK(close(gauss_sum_power(c, DeRhamChar{}, 1), CycloElt::one(ctx, 0), 20));
  }

  TEST_CASE("gauss sums against the finite-sum oracle") {
    long N = 20;
    for (unsigned p : {3u, 5u}) {
      auto c = make(p, N);
      for (long t = 1; t < static_cast<long>(p) - 1; ++t)
        CHECK(same_coords(gauss_sum_power(c, DeRhamChar{0, t, 0, 0, {}}, 1),
                          oracle::gauss_sum(p, 1, N, t, 0), N));
      for (long t = 0; t < static_cast<long>(p) - 1; ++t)
        for (long w = 1; w < static_cast<long>(p); ++w)
          for (long k : {1L, 2L})
            CHECK(same_coords(gauss_sum_power(c, DeRhamChar{0, t, 1, w, {}}, k),
                              oracle::gauss_sum(p, 2, N, t, w, k), N));
    }
  }

  TEST_CASE("de Rham epsilon of characters") {
    auto c = make(5);
    auto* ctx = c->ctx();
    EpsFactor one = EpsFactor::one(ctx);
    auto F = UnramifiedField::create(ctx, 2, 1);
    DeRhamChar unr;
    unr.unram = teichmuller(UnramifiedElt::generator(F));
    CHECK(eps_de_rham_char(c, unr).equals(one));
    CHECK(eps_de_rham_char(c, DeRhamChar::chi_power(1)).equals(one));
    DeRhamChar eta{0, 1, 0, 0, {}};
    EpsFactor e = eps_de_rham_char(c, eta);
    CHECK(close(e.cyclo, gauss_sum_power(c, eta, 1), 20));
    CHECK(e.p_power == 0);
    DeRhamChar eta2{2, 1, 0, 0, {}};
    CHECK(eps_de_rham_char(c, eta2).p_power == -2);
  }

  TEST_CASE("crystalline twist") {
    auto c = make(5);
    auto* ctx = c->ctx();
    CrysModule t1 = CrysModule::tate(ctx, 1);
    auto F = UnramifiedField::create(ctx, 2, 1);
    DeRhamChar unr;
    unr.unram = teichmuller(UnramifiedElt::generator(F));
    CHECK(eps_crystalline_twist(c, t1, unr).equals(EpsFactor::one(ctx)));
    DeRhamChar eta{0, 1, 0, 0, {}};
    EpsFactor e = eps_crystalline_twist(c, t1, eta);
    CHECK(e.p_power == -1);
    CHECK(close(e.cyclo, gauss_sum_power(c, eta, 1), 20));
  }

  TEST_CASE("de Rham scalar") {
    auto* ctx = PadicContext::get(5, 20);
    CrysModule q3 = CrysModule::tate(ctx, 3), q0 = CrysModule::tate(ctx, 0);
    CHECK(eps_dr_scalar(q3).t_exp == 3);
    CHECK(!eps_dr_scalar(q3).unram);
    CHECK(eps_dr_scalar(q0).t_exp == 0);
    CrysModule s = CrysModule::direct_sum(q3, CrysModule::tate(ctx, -1));
    CHECK(eps_dr_scalar(s).equals(eps_dr_scalar(q3) * eps_dr_scalar(CrysModule::tate(ctx, -1))));
  }

  TEST_CASE("change of xi") {
    auto c = make(5);
    CHECK(xi_change_check(c, DeRhamChar{0, 1, 0, 0, {}}, 1).equal);
    for (long t = 1; t <= 3; ++t) CHECK(xi_change_check(c, DeRhamChar{0, t, 0, 0, {}}, 2).equal);
    CHECK(xi_change_check(c, DeRhamChar{0, 2, 1, 3, {}}, 6).equal);
    CHECK_THROWS(xi_change_check(c, DeRhamChar{0, 1, 0, 0, {}}, 10));
  }
}
