// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/epsilon.hpp"

#include <stdexcept>

namespace iwk {

namespace {

std::optional<UnramifiedElt> unram_mul(const std::optional<UnramifiedElt>& a,
                                       const std::optional<UnramifiedElt>& b) {
  if (!a) return b;
  if (!b) return a;
  FieldPtr F = a->f() >= b->f() ? a->field() : b->field();
  return promote(*a, F) * promote(*b, F);
}

DeRhamChar finite_part(const DeRhamChar& eta) {
  DeRhamChar f = eta;
  f.j = 0;
  f.unram.reset();
  return f;
}

}  // namespace

EpsFactor EpsFactor::one(const PadicContext* ctx) {
  EpsFactor e;
  e.cyclo = CycloElt::one(ctx, 0);
  return e;
}

EpsFactor operator*(const EpsFactor& a, const EpsFactor& b) {
  EpsFactor r;
  r.cyclo = a.cyclo * b.cyclo;
  r.p_power = a.p_power + b.p_power;
  r.unram = unram_mul(a.unram, b.unram);
  r.t_exp = a.t_exp + b.t_exp;
  return r;
}

EpsFactor EpsFactor::pow(long k) const {
  if (k < 0) throw std::invalid_argument("EpsFactor::pow needs k >= 0");
  EpsFactor r = one(cyclo.ctx());
  for (long i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool EpsFactor::equals(const EpsFactor& o) const {
  if (p_power != o.p_power || t_exp != o.t_exp) return false;
  if (!(cyclo - o.cyclo).is_zero()) return false;
  if (!unram && !o.unram) return true;
  const PadicContext* ctx = cyclo.ctx();
  FieldPtr F = unram ? unram->field() : o.unram->field();
  if (unram && o.unram && o.unram->f() > F->f()) F = o.unram->field();
  UnramifiedElt a = unram ? promote(*unram, F) : UnramifiedElt::one(F);
  UnramifiedElt b = o.unram ? promote(*o.unram, F) : UnramifiedElt::one(F);
  (void)ctx;
  return (a - b).is_zero();
}

CycloElt gauss_sum_power(const IwCtx& c, const DeRhamChar& eta, long k) {
  const PadicContext* ctx = c->ctx();
  long p = ctx->p();
  int n = eta.conductor(p);
  if (n == 0) return CycloElt::one(ctx, 0);
  long q = ipow(p, n);
  DeRhamChar inv = finite_part(eta).inverse();
  CycloElt acc = CycloElt::zero(ctx, n);
  for (long a = 1; a < q; ++a) {
    if (a % p == 0) continue;
    acc += char_value(c, inv, a) * CycloElt::zeta_power(ctx, n, k * a);
  }
  return acc;
}

EpsFactor gauss_sum(const IwCtx& c, const DeRhamChar& eta, int sign) {
  EpsFactor e = EpsFactor::one(c->ctx());
  e.cyclo = gauss_sum_power(c, eta, sign >= 0 ? 1 : -1);
  return e;
}

EpsFactor eps_de_rham_char(const IwCtx& c, const DeRhamChar& eta, int sign) {
  int n = eta.conductor(c->p());
  EpsFactor e = gauss_sum(c, eta, sign);
  e.p_power = -n * eta.j;
  if (eta.unram && n > 0) e.unram = eta.unram->inverse().pow(n);
  return e;
}

EpsFactor eps_crystalline_twist(const IwCtx& c, const CrysModule& M,
                                const DeRhamChar& eta, int sign) {
  const PadicContext* ctx = c->ctx();
  int n = eta.conductor(c->p());
  EpsFactor e = eps_de_rham_char(c, eta, sign).pow(M.dim());
  if (n == 0 || M.dim() == 0) return e;
  UnramifiedElt det = umat_det(M.phi());
  long v = det.val_lower();
  UnramifiedElt unit = det * UnramifiedElt::from_padic(det.field(), Padic::p_power(ctx, -v));
  EpsFactor f = EpsFactor::one(ctx);
  f.p_power = n * v;
  f.unram = unit.pow(n);
  return e * f;
}

EpsFactor eps_dr_scalar(const CrysModule& M) {
  EpsFactor e = EpsFactor::one(M.ctx());
  e.t_exp = M.m();
  if (!(M.period() - UnramifiedElt::one(M.field())).is_zero()) e.unram = M.period();
  return e;
}

XiChange xi_change_check(const IwCtx& c, const DeRhamChar& eta, long cc) {
  long p = c->p();
  if (((cc % p) + p) % p == 0) throw std::invalid_argument("c must be prime to p");
  XiChange r;
  r.lhs = gauss_sum_power(c, eta, cc);
  DeRhamChar fin = finite_part(eta);
  r.rhs = char_value(c, fin, cc) * gauss_sum_power(c, eta, 1);
  r.equal = (r.lhs - r.rhs).is_zero();
  return r;
}

}  // namespace iwk
