// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/cyclotomic.hpp"

#include <algorithm>
#include <stdexcept>

namespace iwk {

long ipow(long p, int n) {
  long r = 1;
  for (int i = 0; i < n; ++i) r *= p;
  return r;
}

long cyclo_dim(unsigned p, int level) {
  return level == 0 ? 1 : (static_cast<long>(p) - 1) * ipow(p, level - 1);
}

CycloElt CycloElt::zero(const PadicContext* ctx, int level) {
  CycloElt z;
  z.ctx_ = ctx;
  z.level_ = level;
  z.c_.assign(cyclo_dim(ctx->p(), level), Padic::zero(ctx));
  return z;
}

CycloElt CycloElt::one(const PadicContext* ctx, int level) {
  CycloElt z = zero(ctx, level);
  z.c_[0] = Padic::exact(ctx, 1);
  return z;
}

CycloElt CycloElt::from_padic(const Padic& a, int level) {
  CycloElt z = zero(a.ctx(), level);
  z.c_[0] = a;
  return z;
}

CycloElt CycloElt::zeta_power(const PadicContext* ctx, int level, long a) {
  long q = ipow(ctx->p(), level);
  long e = ((a % q) + q) % q;
  std::vector<Padic> poly(e + 1, Padic::zero(ctx));
  poly[e] = Padic::exact(ctx, 1);
  return from_poly(ctx, level, std::move(poly));
}

CycloElt CycloElt::from_poly(const PadicContext* ctx, int level,
                             std::vector<Padic> coeffs) {
  CycloElt z = zero(ctx, level);
  if (level == 0) {
    for (auto& c : coeffs) z.c_[0] += c;
    return z;
  }
  long p = ctx->p();
  long q = ipow(p, level);
  if (static_cast<long>(coeffs.size()) > q) {
    for (long i = q; i < static_cast<long>(coeffs.size()); ++i)
      if (!coeffs[i].is_exact_zero()) coeffs[i % q] += coeffs[i];
    coeffs.resize(q, Padic::zero(ctx));
  }
  long m = q / p;
  long phi = (p - 1) * m;
  for (long d = static_cast<long>(coeffs.size()) - 1; d >= phi; --d) {
    if (coeffs[d].is_exact_zero()) continue;
    Padic c = coeffs[d];
    for (long k = 0; k <= p - 2; ++k) coeffs[d - phi + k * m] -= c;
  }
  for (long i = 0; i < phi && i < static_cast<long>(coeffs.size()); ++i)
    z.c_[i] = coeffs[i];
  return z;
}

CycloElt CycloElt::lift(int level) const {
  if (level == level_) return *this;
  if (level < level_) throw std::invalid_argument("lift to a lower level");
  CycloElt z = zero(ctx_, level);
  if (level_ == 0) {
    z.c_[0] = c_[0];
    return z;
  }
  long step = ipow(ctx_->p(), level - level_);
  for (long i = 0; i < dim(); ++i) z.c_[i * step] = c_[i];
  return z;
}

bool CycloElt::lies_in_level(int level) const {
  if (level >= level_) return true;
  long step = level == 0 ? dim() + 1 : ipow(ctx_->p(), level_ - level);
  for (long i = 1; i < dim(); ++i)
    if (i % step != 0 && !c_[i].is_zero()) return false;
  return true;
}

CycloElt CycloElt::descend(int level) const {
  if (level >= level_) return lift(level);
  if (!lies_in_level(level))
    throw std::domain_error("element does not descend to the requested level");
  CycloElt z = zero(ctx_, level);
  if (level == 0) {
    z.c_[0] = c_[0];
    return z;
  }
  long step = ipow(ctx_->p(), level_ - level);
  for (long i = 0; i < z.dim(); ++i) z.c_[i] = c_[i * step];
  return z;
}

CycloElt CycloElt::operator-() const {
  CycloElt z = *this;
  for (auto& c : z.c_) c = -c;
  return z;
}

CycloElt operator+(const CycloElt& a, const CycloElt& b) {
  int n = std::max(a.level_, b.level_);
  CycloElt x = a.lift(n), y = b.lift(n);
  for (long i = 0; i < x.dim(); ++i) x.c_[i] += y.c_[i];
  return x;
}

CycloElt operator-(const CycloElt& a, const CycloElt& b) { return a + (-b); }

CycloElt operator*(const CycloElt& a, const Padic& b) {
  CycloElt z = a;
  for (auto& c : z.c_) c = c * b;
  return z;
}

CycloElt operator*(const CycloElt& a, const CycloElt& b) {
  int n = std::max(a.level_, b.level_);
  if (a.level_ == 0) return b.lift(n) * a.c_[0];
  if (b.level_ == 0) return a.lift(n) * b.c_[0];
  CycloElt x = a.lift(n), y = b.lift(n);
  long d = x.dim();
  std::vector<Padic> prod(2 * d - 1, Padic::zero(a.ctx_));
  for (long i = 0; i < d; ++i) {
    if (x.c_[i].is_exact_zero()) continue;
    for (long j = 0; j < d; ++j) {
      if (y.c_[j].is_exact_zero()) continue;
      prod[i + j] += x.c_[i] * y.c_[j];
    }
  }
  return CycloElt::from_poly(a.ctx_, n, std::move(prod));
}

CycloElt CycloElt::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloElt acc = one(ctx_, level_), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

CycloElt CycloElt::galois(long c) const {
  if (level_ == 0) return *this;
  long p = ctx_->p();
  long q = ipow(p, level_);
  long cc = ((c % q) + q) % q;
  if (cc % p == 0) throw std::invalid_argument("galois: c must be a unit");
  std::vector<Padic> poly(q, Padic::zero(ctx_));
  for (long i = 0; i < dim(); ++i) poly[(i * cc) % q] += c_[i];
  return from_poly(ctx_, level_, std::move(poly));
}

Padic CycloElt::norm() const {
  if (level_ == 0) return c_[0];
  long p = ctx_->p();
  long q = ipow(p, level_);
  CycloElt acc = *this;
  for (long c = 2; c < q; ++c)
    if (c % p != 0) acc = acc * galois(c);
  return acc.to_padic();
}

CycloElt CycloElt::inverse() const {
  if (level_ == 0) return from_padic(c_[0].inverse(), 0);
  long p = ctx_->p();
  long q = ipow(p, level_);
  CycloElt conj = one(ctx_, level_);
  for (long c = 2; c < q; ++c)
    if (c % p != 0) conj = conj * galois(c);
  Padic n = (conj * *this).to_padic();
  return conj * n.inverse();
}

bool CycloElt::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool CycloElt::is_exact_zero() const {
  for (const auto& c : c_)
    if (!c.is_exact_zero()) return false;
  return true;
}

CycloElt CycloElt::capped(long cap) const {
  CycloElt z = *this;
  for (auto& c : z.c_) c = c.capped(cap);
  return z;
}

long CycloElt::min_absprec() const {
  long m = kInfPrec;
  for (const auto& c : c_) m = std::min(m, c.absprec());
  return m;
}

long CycloElt::val_lower() const {
  long m = kInfPrec;
  for (const auto& c : c_) m = std::min(m, c.valuation());
  return m;
}

}  // namespace iwk
