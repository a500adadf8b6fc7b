// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "helpers.hpp"
#include "iwk/bernoulli.hpp"
#include "iwk/regulator.hpp"
#include "oracle.hpp"

using namespace iwk;
using testing::close;
using testing::congruent;
using testing::poly;

TEST_SUITE("regulator") {
  TEST_CASE("library Bernoulli numbers match the recurrence oracle") {
    for (long n = 0; n <= 30; ++n) {
      CHECK(bernoulli(n) == oracle::bernoulli(n));
      CHECK(bernoulli_plus(n) == oracle::bernoulli_plus(n));
    }
    for (long j = 1; j <= 10; ++j) CHECK(zeta_neg_int(j) == oracle::zeta_neg_int(j));
  }

  TEST_CASE("dlog") {
    auto* ctx = PadicContext::get(5, 20);
    CHECK(dlog(ColemanSeries(poly(ctx, {3})), 10).is_zero());
    PSeries d = dlog(ColemanSeries(poly(ctx, {1, 1})), 10);
    CHECK(agree(d, poly(ctx, {1}), 10));
    CHECK_THROWS(ColemanSeries(poly(ctx, {5, 1})));
    for (long c : {2L, 3L}) {
      PSeries y = dlog(coleman_gc(ctx, c), 16);
      oracle::QPoly q = oracle::dlog_gc(c, 16);
      for (long i = 0; i <= 16; ++i) CHECK(congruent(y[i], oracle::residue(q[i], 5, 20), 20));
    }
  }

  TEST_CASE("norm compatibility") {
    for (unsigned p : {3u, 5u, 7u}) {
      auto* ctx = PadicContext::get(p, 20);
      ColemanSeries x(poly(ctx, {1, 1}));
      NormCheck r = check_norm_compatible(x, 20);
      CHECK(r.norm_compatible);
      CHECK(r.psi_fixed);
      ColemanSeries g = coleman_gc(ctx, 2);
      r = check_norm_compatible(g, 20);
      CHECK(r.norm_compatible);
      CHECK(g.norm_compatible);
      CHECK(r.psi_fixed);
      ColemanSeries bad(poly(ctx, {1, 1, 2}));
      CHECK(!check_norm_compatible(bad, 20).norm_compatible);
      // 1 + pi + pi^2 = Phi_6(1 + pi): norm-compatible exactly when p is prime to 6.
      ColemanSeries phi6(poly(ctx, {1, 1, 1}));
      CHECK(check_norm_compatible(phi6, 20).norm_compatible == (p != 3));
    }
  }

  TEST_CASE("Coleman pipeline against Bernoulli numbers") {
    for (unsigned p : {3u, 5u, 7u}) {
      auto* ctx = PadicContext::get(p, 30);
      auto c = IwasawaContext::create(ctx, 32);
      RegulatorOutput reg = cyclo_regulator(dlog(coleman_gc(ctx, 2), 64), 3);
      for (long j = 1; j <= 6; ++j) {
        Padic v = regulator_value(c, reg, DeRhamChar::chi_power(j)).to_padic();
        CHECK(congruent(v, oracle::residue(oracle::kl_value(p, 2, j), p, 25), 25));
      }
      if (p == 5) {
        Padic v = regulator_value(c, reg, DeRhamChar::chi_power(1)).to_padic();
        CHECK(congruent(v, -1, 25));
      }
    }
  }

  TEST_CASE("regulator kernel and psi condition") {
    auto* ctx = PadicContext::get(5, 20);
    RegulatorOutput r = cyclo_regulator(poly(ctx, {4}), 1);
    CHECK(r.series.is_zero());
    CHECK_THROWS(cyclo_regulator(poly(ctx, {0, 1}), 1));
  }

  TEST_CASE("twisted regulator") {
    auto* ctx = PadicContext::get(5, 30);
    auto c = IwasawaContext::create(ctx, 32);
    PSeries y = dlog(coleman_gc(ctx, 2), 64);
    RegulatorOutput r0 = cyclo_regulator(y, 3);
    RegulatorOutput r1 = twisted_regulator(y, 1, 3);
    CHECK(r1.t_shift == 1);
    for (long j = 2; j <= 4; ++j) {
      CycloElt a = regulator_value(c, r1, DeRhamChar::chi_power(j));
      CycloElt b = regulator_value(c, r0, DeRhamChar::chi_power(j - 1)) * Padic::exact(ctx, j);
      CHECK(close(a, b, 20));
    }
  }

  TEST_CASE("big exponential") {
    auto* ctx = PadicContext::get(5, 30);
    long D = 64;
    Padic one = Padic::exact(ctx, 1);
    CHECK(big_exponential(PSeries::zero(one), one, 2, D).is_zero());
    PSeries y = dlog(coleman_gc(ctx, 2), D);
    RegulatorOutput reg = cyclo_regulator(y, 3);
    PSeries lhs = big_exponential(reg.series, one, 2, D);
    PSeries rhs = ell_apply(1, ell_apply(0, y));
    CHECK(agree(lhs, rhs, D - 2));
    CHECK_THROWS(big_exponential(poly(ctx, {1}), one, 1, D));
  }

  TEST_CASE("inverse derivation") {
    auto* ctx = PadicContext::get(5, 20);
    long D = 12;
    for (long a : {1L, 2L, 3L, 7L}) {
      PSeries x = one_plus_pi_pow(Padic::exact(ctx, a), a);
      PSeries y = deriv_inverse(x);
      CHECK(agree(y, x * Padic::from_rational(ctx, mpq_class(1, a)), a));
      CHECK(agree(deriv(y), x, a));
    }
    CHECK_THROWS(deriv_inverse(one_plus_pi_pow(Padic::exact(ctx, 5), 5)));
    auto c = IwasawaContext::create(ctx, 16);
    PSeries m = deriv_inverse_measure(IwasawaElt::one(c), D);
    PSeries back = deriv(m);
    CHECK(agree(back, mellin(IwasawaElt::one(c), D), back.deg()));
  }

  TEST_CASE("interpolation prefactor") {
    auto* ctx = PadicContext::get(5, 20);
    auto c = IwasawaContext::create(ctx, 16);
    CrysModule q0 = CrysModule::tate(ctx, 0);
    for (long j = 1; j <= 3; ++j) {
      Prefactor pf = interpolation_prefactor(c, q0, DeRhamChar::chi_power(j));
      CHECK(pf.conductor == 0);
      REQUIRE(pf.ratio);
      mpz_class pj = 1;
      for (long i = 0; i < j; ++i) pj *= 5;
      mpq_class expect = mpq_class(1 - pj) / (1 - mpq_class(1, pj * 5));
      CHECK(pf.ratio->equals(UnramifiedElt::from_padic(q0.field(), Padic::from_rational(ctx, expect))));
    }
    Prefactor p0 = interpolation_prefactor(c, q0, DeRhamChar{});
    CHECK(p0.bad_one);
    CHECK(!p0.ratio);
    Prefactor p1 = interpolation_prefactor(c, CrysModule::tate(ctx, 1), DeRhamChar{});
    CHECK(p1.bad_pinv);
    CHECK(!p1.bad_one);
    CHECK(interpolation_prefactor(c, CrysModule::tate(ctx, 1), DeRhamChar{0, 1, 0, 0, {}}).conductor == 1);
  }

  TEST_CASE("sign element under twists") {
    auto c = IwasawaContext::create(PadicContext::get(5, 20), 16);
    for (long d = 1; d <= 3; ++d)
      for (long m = -2; m <= 2; ++m)
        for (long j = -2; j <= 2; ++j) CHECK(sign_twist_check(c, d, m, j));
  }
}
