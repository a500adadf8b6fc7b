// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "iwk/series.hpp"
#include "oracle.hpp"

using namespace iwk;
using testing::congruent;
using testing::poly;

namespace {

bool matches(const PSeries& f, const oracle::QPoly& q, long k) {
  long n = std::max<long>(f.deg() + 1, static_cast<long>(q.size()));
  for (long i = 0; i < n; ++i) {
    mpq_class c = i < static_cast<long>(q.size()) ? q[i] : mpq_class(0);
    Padic x = i <= f.deg() ? f[i] : Padic::zero(f.ctx());
    if (!congruent(x, oracle::residue(c, f.ctx()->p(), k), k)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("phi") {
    auto* ctx = PadicContext::get(5, 20);
    Padic one = Padic::exact(ctx, 1);
    CHECK(agree(phi(PSeries::one(one)), PSeries::one(one), 0));
    PSeries pp = phi(PSeries::pi(one));
    CHECK(agree(pp, one_plus_pi_pow(Padic::exact(ctx, 5), 5) - PSeries::one(one), 5));
    long D = 20;
    PSeries t = t_series(one, D);
    CHECK(agree(phi(t).truncate(D), t * Padic::exact(ctx, 5), D));
  }

  TEST_CASE("psi basics") {
    for (unsigned p : {3u, 5u, 7u}) {
      auto* ctx = PadicContext::get(p, 20);
      Padic one = Padic::exact(ctx, 1);
      PSeries r = psi(PSeries::one(one));
      CHECK(agree(r, PSeries::one(one), r.deg()));
      PSeries xp = one_plus_pi_pow(Padic::exact(ctx, p), p);
      r = psi(xp);
      CHECK(agree(r, poly(ctx, {1, 1}), std::max(1L, r.deg())));
      r = psi(PSeries::pi(one));
      CHECK(agree(r, poly(ctx, {-1}), r.deg()));
    }
  }

  TEST_CASE("psi against the mu_p average") {
    std::mt19937_64 rng(17);
    int n = 0;
    for (unsigned p : {3u, 5u, 7u}) {
      auto* ctx = PadicContext::get(p, 20);
      for (int t = 0; t < 200 / 3 + 1; ++t, ++n) {
        long d = 1 + static_cast<long>(rng() % 12);
        std::vector<Padic> c;
        oracle::QPoly q;
        for (long i = 0; i <= d; ++i) {
          long v = static_cast<long>(rng() % 2001) - 1000;
          c.push_back(Padic::exact(ctx, v));
          q.push_back(v);
        }
        PSeries f(std::move(c));
        CHECK(matches(psi(f), oracle::brute_psi(q, p), 20));
        CHECK(matches(phi(f), oracle::brute_phi(q, p), 20));
      }
    }
    CHECK(n >= 200);
  }

  TEST_CASE("derivation") {
    auto* ctx = PadicContext::get(5, 20);
    Padic one = Padic::exact(ctx, 1);
    CHECK(agree(deriv(PSeries::pi(one)), poly(ctx, {1, 1}), 1));
    for (long k : {2L, 7L}) {
      PSeries x = one_plus_pi_pow(Padic::exact(ctx, k), k);
      CHECK(agree(deriv(x), x * Padic::exact(ctx, k), k));
    }
    long D = 24;
    PSeries dt = deriv(t_series(one, D));
    CHECK(agree(dt, PSeries::one(one), dt.deg()));
  }

  TEST_CASE("gamma action") {
    auto* ctx = PadicContext::get(5, 20);
    Padic one = Padic::exact(ctx, 1);
    long D = 16;
    PSeries f = poly(ctx, {3, -1, 4, 1, -5});
    CHECK(agree(gamma_action(one, f, D), f, D));
    Padic c = Padic::exact(ctx, 7);
    PSeries t = t_series(one, D);
    CHECK(agree(gamma_action(c, t, D), t * c, D));
    Padic c2 = Padic::exact(ctx, 3);
    CHECK(agree(gamma_action(c2, gamma_action(c, f, D), D), gamma_action(c * c2, f, D), D));
  }

  TEST_CASE("ell operators") {
    auto* ctx = PadicContext::get(5, 20);
    Padic one = Padic::exact(ctx, 1);
    long D = 16;
    CHECK(ell_apply(0, PSeries::one(one), D).is_zero());
    PSeries x = one_plus_pi_pow(Padic::exact(ctx, 3), D);
    PSeries t = t_series(one, D);
    CHECK(agree(ell_apply(0, x, D), PSeries::mul(t, x, D) * Padic::exact(ctx, 3), D));
    CHECK(ell_apply(1, t, D).truncate(D - 1).is_zero());
  }

  TEST_CASE("solving (1 - phi) y = x") {
    auto* ctx = PadicContext::get(5, 20);
    long D = 30;
    Padic zero = Padic::zero(ctx);
    CHECK(solve_one_minus_phi(PSeries::zero(zero), D).is_zero());
    PSeries x = poly(ctx, {0, 1});
    PSeries y = solve_one_minus_phi(x, D);
    CHECK(agree(y - phi(y), x, D));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
      std::vector<Padic> c{Padic::exact(ctx, 0)};
      for (int i = 0; i < 8; ++i) c.push_back(Padic::random_integer(ctx, rng));
      PSeries g(std::move(c));
      PSeries back = solve_one_minus_phi(g - phi(g), D);
      CHECK(agree(back, g, D));
    }
  }

  TEST_CASE("inverse and moments") {
    auto* ctx = PadicContext::get(7, 20);
    long D = 20;
    PSeries f = poly(ctx, {2, 1, 3});
    PSeries g = series_inverse(f, D);
    CHECK(agree(PSeries::mul(f, g, D), poly(ctx, {1}), D));
    PSeries x = one_plus_pi_pow(Padic::exact(ctx, 4), D);
    for (long k = 0; k < 4; ++k) CHECK(congruent(moment(x, k), oracle::residue(mpq_class(mpz_class(1) << (2 * k)), 7, 20), 20));
  }
}
