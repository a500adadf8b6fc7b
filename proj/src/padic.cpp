// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/padic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace iwk {

long saturating_add(long a, long b) {
  if (a >= kInfPrec || b >= kInfPrec) return kInfPrec;
  long s = a + b;
  return s >= kInfPrec ? kInfPrec : s;
}

bool is_odd_prime(unsigned long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (unsigned long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

PadicContext::PadicContext(unsigned p, long N) : p_(p), N_(N) {
  pows_.resize(kCachedPowers);
  pows_[0] = 1;
  for (long k = 1; k < kCachedPowers; ++k) pows_[k] = pows_[k - 1] * p;
}

const PadicContext* PadicContext::get(unsigned p, long N) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (N < 1) throw std::invalid_argument("precision must be positive");
  static std::mutex mu;
  static std::map<std::pair<unsigned, long>, std::unique_ptr<PadicContext>>
      table;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = table[{p, N}];
  if (!slot) slot.reset(new PadicContext(p, N));
  return slot.get();
}

mpz_class PadicContext::pow(long k) const {
  if (k < 0) throw std::invalid_argument("negative exponent");
  if (k < kCachedPowers) return pows_[k];
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p_, static_cast<unsigned long>(k));
  return r;
}

const mpz_class& PadicContext::pow_ref(long k) const {
  if (k < 0 || k >= kCachedPowers)
    throw std::out_of_range("power of p outside cache");
  return pows_[k];
}

long PadicContext::flog(long n) const {
  long k = 0;
  while (n >= static_cast<long>(p_)) {
    n /= p_;
    ++k;
  }
  return k;
}

long PadicContext::vp(long n) const {
  if (n == 0) return kInfPrec;
  if (n < 0) n = -n;
  long k = 0;
  while (n % p_ == 0) {
    n /= p_;
    ++k;
  }
  return k;
}

namespace {

mpz_class mod_pow(const PadicContext* ctx, const mpz_class& x, long k) {
  if (k >= kExactRel / 2) return x;
  mpz_class r;
  if (k < PadicContext::kCachedPowers)
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), ctx->pow_ref(k).get_mpz_t());
  else
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), ctx->pow(k).get_mpz_t());
  return r;
}

}  // namespace

Padic Padic::zero(const PadicContext* ctx, long absprec) {
  Padic z(ctx);
  z.v_ = absprec;
  return z;
}

Padic Padic::normalize(const PadicContext* ctx, mpz_class x, long v,
                       long absprec) {
  if (v >= absprec) return zero(ctx, absprec);
  x = mod_pow(ctx, x, absprec - v);
  if (x == 0) return zero(ctx, absprec);
  mpz_class pp = ctx->p();
  long k = static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(),
                                        pp.get_mpz_t()));
  return Padic(ctx, std::move(x), v + k, absprec - v - k);
}

Padic Padic::from_mpz(const PadicContext* ctx, const mpz_class& a,
                      long relprec) {
  if (relprec < 0) relprec = ctx->N();
  if (a == 0) return zero(ctx);
  mpz_class x = a;
  mpz_class pp = ctx->p();
  long k = static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(),
                                        pp.get_mpz_t()));
  x = mod_pow(ctx, x, relprec);
  return Padic(ctx, std::move(x), k, relprec);
}

Padic Padic::exact(const PadicContext* ctx, const mpz_class& a) {
  if (a == 0) return zero(ctx);
  mpz_class x = a;
  mpz_class pp = ctx->p();
  long k = static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(),
                                        pp.get_mpz_t()));
  return Padic(ctx, std::move(x), k, kExactRel);
}

Padic Padic::from_int(const PadicContext* ctx, long a, long relprec) {
  return from_mpz(ctx, mpz_class(a), relprec);
}

Padic Padic::from_rational(const PadicContext* ctx, const mpq_class& q,
                           long relprec) {
  if (q == 0) return zero(ctx);
  Padic n = from_mpz(ctx, q.get_num(), relprec);
  Padic d = from_mpz(ctx, q.get_den(), relprec);
  return n / d;
}

Padic Padic::p_power(const PadicContext* ctx, long k, long relprec) {
  if (relprec < 0) relprec = ctx->N();
  return Padic(ctx, mpz_class(1), k, relprec);
}

Padic Padic::random_integer(const PadicContext* ctx, std::mt19937_64& rng,
                            long absprec) {
  if (absprec < 0) absprec = ctx->N();
  mpz_class x = 0;
  mpz_class bound = ctx->pow(absprec);
  while (x < bound * bound) {
    x <<= 64;
    x += mpz_class(std::to_string(rng()));
  }
  return normalize(ctx, x, 0, absprec);
}

Padic Padic::operator-() const {
  if (r_ == 0) return *this;
  if (is_exact()) return Padic(ctx_, -u_, v_, r_);
  mpz_class m = ctx_->pow(r_) - u_;
  return Padic(ctx_, std::move(m), v_, r_);
}

Padic operator+(const Padic& a, const Padic& b) {
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  const PadicContext* ctx = a.ctx_;
  long ap = std::min(a.absprec(), b.absprec());
  long va = a.is_zero() ? ap : a.v_;
  long vb = b.is_zero() ? ap : b.v_;
  long v = std::min(va, vb);
  if (v >= ap) return Padic::zero(ctx, ap);
  mpz_class x = 0;
  if (!a.is_zero() && a.v_ < ap) x += a.u_ * ctx->pow(a.v_ - v);
  if (!b.is_zero() && b.v_ < ap) x += b.u_ * ctx->pow(b.v_ - v);
  return Padic::normalize(ctx, std::move(x), v, ap);
}

Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

Padic operator*(const Padic& a, const Padic& b) {
  const PadicContext* ctx = a.ctx_ ? a.ctx_ : b.ctx_;
  if (a.is_zero() || b.is_zero())
    return Padic::zero(ctx, saturating_add(a.v_, b.v_));
  long r = std::min(a.r_, b.r_);
  mpz_class u = a.u_ * b.u_;
  u = mod_pow(ctx, u, r);
  return Padic(ctx, std::move(u), a.v_ + b.v_, r);
}

Padic Padic::inverse() const {
  if (is_zero())
    throw PrecisionError("division by an element indistinguishable from 0");
  if (is_exact() && (u_ == 1 || u_ == -1)) return Padic(ctx_, u_, -v_, r_);
  long r = is_exact() ? 2 * ctx_->N() + 64 : r_;
  return inverse_mod(r);
}

Padic Padic::inverse_mod(long r) const {
  mpz_class inv;
  mpz_class mod = ctx_->pow(r);
  mpz_class u = u_ % mod;
  if (u < 0) u += mod;
  mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  return Padic(ctx_, std::move(inv), -v_, r);
}

Padic operator/(const Padic& a, const Padic& b) {
  if (b.is_zero())
    throw PrecisionError("division by an element indistinguishable from 0");
  if (b.is_exact() && !a.is_zero() && !a.is_exact())
    return a * b.inverse_mod(a.r_);
  return a * b.inverse();
}

Padic Padic::pow(long e) const {
  if (e == 0) return from_int(ctx_, 1, r_ > 0 ? r_ : ctx_->N());
  if (e < 0) return inverse().pow(-e);
  Padic base = *this;
  Padic acc = exact(ctx_, 1);
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      acc = first ? base : acc * base;
      first = false;
    }
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

Padic Padic::capped(long cap) const {
  if (absprec() <= cap) return *this;
  if (r_ == 0 || cap <= v_) return zero(ctx_, cap);
  return Padic(ctx_, mod_pow(ctx_, u_, cap - v_), v_, cap - v_);
}

Padic Padic::shifted(long k) const {
  Padic r = *this;
  if (r_ == 0) {
    r.v_ = saturating_add(v_, k);
  } else {
    r.v_ += k;
  }
  return r;
}

mpq_class Padic::to_rational() const {
  if (r_ == 0) return 0;
  mpq_class q(u_);
  if (v_ >= 0) {
    q *= mpq_class(ctx_->pow(v_));
  } else {
    q /= mpq_class(ctx_->pow(-v_));
  }
  q.canonicalize();
  return q;
}

mpz_class Padic::to_mpz() const {
  if (r_ == 0) return 0;
  if (v_ < 0) throw PrecisionError("element is not integral");
  return u_ * ctx_->pow(v_);
}

mpz_class Padic::to_signed_mpz() const {
  mpz_class x = to_mpz();
  if (r_ == 0 || is_exact()) return x;
  mpz_class m = ctx_->pow(absprec());
  if (2 * x > m) x -= m;
  return x;
}

std::vector<unsigned> Padic::unit_digits() const {
  std::vector<unsigned> d;
  long r = is_exact() ? ctx_->N() : r_;
  mpz_class x = mod_pow(ctx_, u_, r);
  for (long i = 0; i < r; ++i) {
    d.push_back(static_cast<unsigned>(mpz_fdiv_ui(x.get_mpz_t(), ctx_->p())));
    mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), ctx_->p());
  }
  return d;
}

std::string Padic::to_string() const {
  std::string P = std::to_string(ctx_->p());
  if (r_ == 0) {
    if (v_ >= kInfPrec) return "0";
    return "O(" + P + "^" + std::to_string(v_) + ")";
  }
  std::string s = u_.get_str();
  if (v_ != 0) s = P + "^" + std::to_string(v_) + "*" + s;
  return s + " + O(" + P + "^" + std::to_string(absprec()) + ")";
}

Padic teichmuller(const PadicContext* ctx, long a, long relprec) {
  if (relprec < 0) relprec = ctx->N();
  long p = ctx->p();
  long r = ((a % p) + p) % p;
  if (r == 0) return Padic::zero(ctx);
  mpz_class mod = ctx->pow(relprec);
  mpz_class x = r, y;
  for (long it = 0; it <= relprec + 1; ++it) {
    mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), ctx->p(), mod.get_mpz_t());
    if (y == x) break;
    x = y;
  }
  return Padic::from_mpz(ctx, x, relprec);
}

Padic padic_log(const Padic& u) {
  const PadicContext* ctx = u.ctx();
  Padic one = Padic::exact(ctx, 1);
  Padic x = u - one;
  if (x.is_exact_zero()) return Padic::zero(ctx);
  if (!u.is_unit() || x.valuation() < 1)
    throw std::domain_error("padic_log expects a 1-unit");
  long target = std::min(x.absprec(), x.valuation() + ctx->N());
  if (x.is_zero()) return Padic::zero(ctx, target);
  long v = x.valuation();
  // Terms k > K all have valuation >= target.
  long K = 1;
  while (true) {
    bool ok = true;
    for (long k = K + 1; k <= K + 64 * ctx->p(); ++k)
      if (k * v - ctx->flog(k) < target) {
        ok = false;
        break;
      }
    if (ok) break;
    K *= 2;
  }
  Padic sum = Padic::zero(ctx);
  Padic xk = x;
  for (long k = 1; k <= K; ++k) {
    Padic term = xk / Padic::exact(ctx, k);
    sum = (k % 2 == 1) ? sum + term : sum - term;
    xk = xk * x;
  }
  return sum.capped(target);
}

Padic padic_exp(const Padic& x) {
  const PadicContext* ctx = x.ctx();
  if (x.is_exact_zero()) return Padic::exact(ctx, 1);
  if (x.valuation() < 1) throw std::domain_error("padic_exp needs v(x) >= 1");
  long target = std::min(x.absprec(), ctx->N());
  Padic sum = Padic::exact(ctx, 1);
  Padic term = sum;
  long p = ctx->p();
  for (long k = 1;; ++k) {
    // v(x^k/k!) >= k v - (k-1)/(p-1)
    long lower = k * x.valuation() - (k - 1) / (p - 1);
    if (lower >= target + 2) break;
    term = term * x / Padic::exact(ctx, k);
    sum += term;
  }
  return sum.capped(target);
}

std::vector<Padic> binomial_row(const Padic& x, long mmax) {
  const PadicContext* ctx = x.ctx();
  std::vector<Padic> row;
  row.reserve(mmax + 1);
  row.push_back(Padic::exact(ctx, 1));
  for (long m = 0; m < mmax; ++m) {
    Padic f = x - Padic::exact(ctx, m);
    row.push_back(row.back() * f / Padic::exact(ctx, m + 1));
  }
  return row;
}

}  // namespace iwk
