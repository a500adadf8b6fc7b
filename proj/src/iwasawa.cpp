// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/iwasawa.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace iwk {

namespace {

long mod_pos(long a, long m) { return ((a % m) + m) % m; }

long vp_fact(long p, long n) {
  long v = 0;
  for (long q = p; q <= n; q *= p) v += n / q;
  return v;
}

// floor and ceil of a / b for b > 0
long fdiv(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
long cdiv(long a, long b) { return -fdiv(-a, b); }

}  // namespace

// ---------------------------------------------------------------------------
// DeRhamChar

int DeRhamChar::conductor(unsigned p) const {
  if (wild_level > 0) return wild_level + 1;
  return tame_mod(p) != 0 ? 1 : 0;
}

long DeRhamChar::tame_mod(unsigned p) const {
  return mod_pos(tame, static_cast<long>(p) - 1);
}

DeRhamChar DeRhamChar::times_chi(long k) const {
  DeRhamChar r = *this;
  r.j += k;
  return r;
}

DeRhamChar DeRhamChar::times_angle(long s) const {
  DeRhamChar r = *this;
  r.j += s;
  r.tame -= s;
  return r;
}

DeRhamChar DeRhamChar::inverse() const {
  DeRhamChar r = *this;
  r.j = -j;
  r.tame = -tame;
  r.wild_exp = -wild_exp;
  if (unram) r.unram = unram->inverse();
  return r;
}

int DeRhamChar::sign_at_minus_one() const {
  return ((j + tame) % 2 == 0) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// IwasawaContext

std::shared_ptr<const IwasawaContext> IwasawaContext::create(
    const PadicContext* ctx, long dt, long guard) {
  if (dt < 2) throw std::invalid_argument("T-degree must be at least 2");
  std::shared_ptr<IwasawaContext> c(new IwasawaContext());
  c->ctx_ = ctx;
  c->dt_ = dt;
  c->dstore_ = dt + (guard < 0 ? ctx->N() + 10 : guard);
  long p = ctx->p();
  c->omega_.resize(p);
  c->omega_[0] = Padic::zero(ctx);
  for (long b = 1; b < p; ++b) {
    if (b == 1) {
      c->omega_[b] = Padic::exact(ctx, 1);
    } else if (b == p - 1) {
      c->omega_[b] = Padic::exact(ctx, -1);
    } else {
      c->omega_[b] = teichmuller(ctx, b);
    }
  }
  c->u_ = Padic::exact(ctx, p + 1);
  c->log_u_ = padic_log(c->u_);
  return c;
}

const Padic& IwasawaContext::omega(long b) const {
  return omega_[mod_pos(b, p())];
}

Padic IwasawaContext::omega_pow(long b, long i) const {
  return omega(b).pow(mod_pos(i, ncomp()));
}

Padic IwasawaContext::u_pow(long k) const {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p() + 1, static_cast<unsigned long>(k < 0 ? -k : k));
  Padic x = Padic::exact(ctx_, r);
  return k < 0 ? x.inverse() : x;
}

long IwasawaContext::log_u_index(long a, int k) const {
  long p = this->p();
  if (mod_pos(a, p) == 0) throw std::invalid_argument("log_u_index: a not a unit");
  if (k <= 0) return 0;
  long q = ipow(p, k + 1);
  if (q > 50000000) throw std::invalid_argument("log_u_index: level too large");
  const std::vector<long>* tab;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = log_tables_.find(k);
    if (it == log_tables_.end()) {
      std::vector<long> t(q, -1);
      long r = 1, pk = q / p;
      for (long e = 0; e < pk; ++e) {
        t[r] = e;
        r = (r * (p + 1)) % q;
      }
      it = log_tables_.emplace(k, std::move(t)).first;
    }
    tab = &it->second;
  }
  mpz_class Q = q;
  mpz_class w = teichmuller(ctx_, a, std::max<long>(N(), k + 1)).to_mpz();
  mpz_class winv;
  mpz_invert(winv.get_mpz_t(), w.get_mpz_t(), Q.get_mpz_t());
  mpz_class am = a;
  mpz_class r = am * winv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), Q.get_mpz_t());
  long e = (*tab)[r.get_si()];
  if (e < 0) throw std::logic_error("log_u_index: missing class");
  return e;
}

// ---------------------------------------------------------------------------
// IwasawaElt

namespace {

// F(c + (1 + c) T), v(c) >= vc >= 1.
PSeries affine_shift(const PSeries& F, const Padic& c_in, long vc) {
  const PadicContext* ctx = F.ctx();
  if (c_in.is_exact_zero()) return F;
  if (F.tail().is_unknown())
    throw PrecisionError("twist of a series with unknown tail");
  long d = F.deg();
  long low = std::min(0L, F.low_from(0));
  long A = ctx->N() + 8 - low;
  Padic c = c_in.capped(A);
  Padic dd = (c + Padic::exact(ctx, 1)).capped(A);
  std::vector<Padic> cp(d + 1), dp(d + 1);
  cp[0] = Padic::exact(ctx, 1);
  dp[0] = Padic::exact(ctx, 1);
  for (long e = 1; e <= d; ++e) {
    cp[e] = cp[e - 1] * c;
    dp[e] = dp[e - 1] * dd;
  }
  std::vector<Padic> r(d + 1, Padic::zero(ctx));
  for (long m = 0; m <= d; ++m) {
    Padic acc = Padic::zero(ctx);
    for (long n = m; n <= d; ++n) {
      if (F[n].is_exact_zero()) continue;
      acc += F[n] * Padic::exact(ctx, binom(n, m)) * cp[n - m];
    }
    if (!F.is_exact_poly())
      acc = acc.capped(tail_sweep(ctx, F.tail(), d, vc, 1, m * vc));
    r[m] = acc * dp[m];
  }
  if (F.is_exact_poly()) return PSeries(std::move(r), Tail::exact());
  const Tail& t = F.tail();
  long K = 0;
  if (t.growth > 0) {
    for (long s = 1; s <= 64 * (t.growth + 1); ++s)
      K = std::max(K, t.growth * (1 + ctx->flog(s)) - s * vc);
  }
  return PSeries(std::move(r), Tail::bounded(t.base - K, t.growth));
}

// F((1 + T)^{-1} - 1) to degree dout (exact F) or F.deg().
PSeries invert_variable(const PSeries& F, long dout) {
  const PadicContext* ctx = F.ctx();
  long d = F.is_exact_poly() ? std::max(dout, F.deg()) : F.deg();
  if (F.is_exact_poly() && F.deg() == 0) return F;
  std::vector<Padic> r(d + 1, Padic::zero(ctx));
  r[0] = F[0];
  for (long m = 1; m <= d; ++m) {
    Padic acc = Padic::zero(ctx);
    for (long k = 1; k <= std::min(m, F.deg()); ++k) {
      if (F[k].is_exact_zero()) continue;
      acc += F[k] * Padic::exact(ctx, binom(m - 1, k - 1));
    }
    r[m] = (m % 2) ? -acc : acc;
  }
  Tail t;
  if (F.is_exact_poly()) {
    t = Tail::bounded(F.low_from(1), 0);
  } else if (F.tail().is_unknown()) {
    t = Tail::unknown();
  } else {
    t = Tail::bounded(std::min(F.low_from(1), F.tail().base), F.tail().growth);
  }
  return PSeries(std::move(r), t);
}

PSeries const_series(const Padic& a) { return PSeries::constant(a); }

}  // namespace

IwasawaElt::IwasawaElt(IwCtx ctx, std::vector<PSeries> comps)
    : c_(std::move(ctx)), comps_(std::move(comps)) {
  if (static_cast<int>(comps_.size()) != c_->ncomp())
    throw std::invalid_argument("IwasawaElt needs p-1 components");
}

IwasawaElt IwasawaElt::zero(const IwCtx& c) {
  return constant(c, Padic::zero(c->ctx()));
}

IwasawaElt IwasawaElt::one(const IwCtx& c) {
  return constant(c, Padic::exact(c->ctx(), 1));
}

IwasawaElt IwasawaElt::constant(const IwCtx& c, const Padic& a) {
  return IwasawaElt(c, std::vector<PSeries>(c->ncomp(), const_series(a)));
}

IwasawaElt IwasawaElt::group_like(const IwCtx& c, long b, const Padic& a) {
  PSeries base = one_plus_pi_pow(a, c->dstore());
  std::vector<PSeries> comps;
  for (int i = 0; i < c->ncomp(); ++i) {
    Padic w = c->omega_pow(b, i);
    comps.push_back(w.is_exact() && w.to_signed_mpz() == 1 ? base : base * w);
  }
  return IwasawaElt(c, std::move(comps));
}

IwasawaElt IwasawaElt::group_elt(const IwCtx& c, long x, int k) {
  long e = c->log_u_index(x, k);
  return group_like(c, x, Padic::exact(c->ctx(), e));
}

IwasawaElt IwasawaElt::gamma1(const IwCtx& c) {
  return group_like(c, 1, Padic::exact(c->ctx(), 1));
}

IwasawaElt IwasawaElt::gamma_minus_one(const IwCtx& c) {
  return group_like(c, -1, Padic::exact(c->ctx(), 0));
}

IwasawaElt IwasawaElt::ell(const IwCtx& c, long j) {
  PSeries lg = log1p_series(c->ctx(), c->dstore()) * c->log_u().inverse();
  if (j != 0) lg = lg - PSeries::constant(Padic::exact(c->ctx(), j));
  return IwasawaElt(c, std::vector<PSeries>(c->ncomp(), lg));
}

IwasawaElt IwasawaElt::p_element(const IwCtx& c, long k) {
  const PadicContext* ctx = c->ctx();
  IwasawaElt r = one(c);
  for (long i = 0; i < k; ++i) {
    Padic w = c->u_pow(-i);
    PSeries f({Padic::exact(ctx, 1) - w, -w});
    r = r * IwasawaElt(c, std::vector<PSeries>(c->ncomp(), f));
  }
  return r;
}

IwasawaElt IwasawaElt::random(const IwCtx& c, std::mt19937_64& rng, long deg) {
  std::vector<PSeries> comps;
  for (int i = 0; i < c->ncomp(); ++i) {
    std::vector<Padic> v;
    for (long m = 0; m <= deg; ++m) v.push_back(Padic::random_integer(c->ctx(), rng));
    comps.emplace_back(std::move(v), Tail::exact());
  }
  return IwasawaElt(c, std::move(comps));
}

bool IwasawaElt::is_integral() const {
  for (const auto& f : comps_) {
    if (f.low_from(0) < 0) return false;
    const Tail& t = f.tail();
    if (t.is_unknown()) return false;
    if (!t.is_exact() && (t.base < 0 || t.growth > 0)) return false;
  }
  return true;
}

bool IwasawaElt::is_zero() const {
  for (const auto& f : comps_)
    if (!f.is_zero()) return false;
  return true;
}

IwasawaElt IwasawaElt::operator-() const {
  std::vector<PSeries> r;
  for (const auto& f : comps_) r.push_back(-f);
  return IwasawaElt(c_, std::move(r));
}

IwasawaElt operator+(const IwasawaElt& a, const IwasawaElt& b) {
  std::vector<PSeries> r;
  for (int i = 0; i < a.c_->ncomp(); ++i) r.push_back(a.comps_[i] + b.comps_[i]);
  return IwasawaElt(a.c_, std::move(r));
}

IwasawaElt operator-(const IwasawaElt& a, const IwasawaElt& b) { return a + (-b); }

IwasawaElt operator*(const IwasawaElt& a, const IwasawaElt& b) {
  std::vector<PSeries> r;
  long cap = a.c_->dstore();
  for (int i = 0; i < a.c_->ncomp(); ++i)
    r.push_back(PSeries::mul(a.comps_[i], b.comps_[i], cap));
  return IwasawaElt(a.c_, std::move(r));
}

IwasawaElt operator*(const IwasawaElt& a, const Padic& s) {
  std::vector<PSeries> r;
  for (const auto& f : a.comps_) r.push_back(f * s);
  return IwasawaElt(a.c_, std::move(r));
}

IwasawaElt IwasawaElt::twist(long k, long tame) const {
  int n = c_->ncomp();
  std::vector<PSeries> r;
  Padic cshift = k == 0 ? Padic::zero(ctx()) : c_->u_pow(k) - Padic::exact(ctx(), 1);
  long vc = k == 0 ? 0 : 1 + ctx()->vp(k);
  for (int i = 0; i < n; ++i) {
    const PSeries& src = comps_[mod_pos(i + k + tame, n)];
    r.push_back(k == 0 ? src : affine_shift(src, cshift, vc));
  }
  return IwasawaElt(c_, std::move(r));
}

IwasawaElt IwasawaElt::involution() const {
  int n = c_->ncomp();
  std::vector<PSeries> r;
  for (int i = 0; i < n; ++i)
    r.push_back(invert_variable(comps_[mod_pos(-i, n)], c_->dstore()));
  return IwasawaElt(c_, std::move(r));
}

bool agree(const IwasawaElt& a, const IwasawaElt& b, long d) {
  if (d < 0) d = a.c_->dt();
  for (int i = 0; i < a.c_->ncomp(); ++i)
    if (!agree(a.comps_[i], b.comps_[i], d)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation at characters

namespace {

struct CharPoint {
  int comp = 0;
  int level = 0;
  bool zero = false;  // eta(gamma_1) == 1 exactly
  CycloElt t0;        // eta(gamma_1) - 1
  CycloElt zeta0;     // eta(gamma_1)
  long num = 0, den = 1;  // v(t0) = num / den
};

CharPoint char_point(const IwCtx& c, const DeRhamChar& eta) {
  unsigned p = c->p();
  if (eta.wild_level < 0) throw std::invalid_argument("negative wild level");
  if (eta.wild_level > 0 && mod_pos(eta.wild_exp, p) == 0)
    throw std::invalid_argument("wild exponent must be a unit mod p");
  CharPoint cp;
  cp.comp = static_cast<int>(mod_pos(eta.tame + eta.j, c->ncomp()));
  cp.level = eta.wild_level;
  cp.zeta0 = char_at_gamma1(c, eta);
  cp.t0 = cp.zeta0 - CycloElt::one(c->ctx(), cp.level);
  cp.zero = eta.wild_level == 0 && eta.j == 0;
  if (eta.wild_level > 0) {
    cp.num = 1;
    cp.den = cyclo_dim(p, eta.wild_level);
  } else if (!cp.zero) {
    cp.num = 1 + c->ctx()->vp(eta.j);
  }
  return cp;
}

// Taylor coefficients G_0..G_R in s of F(zeta0 e^{s L} - 1).
std::vector<CycloElt> taylor_coeffs(const IwCtx& c, const PSeries& F,
                                    const CharPoint& cp, long R) {
  const PadicContext* ctx = c->ctx();
  int lev = cp.level;
  long d = F.deg();
  std::vector<CycloElt> cm;
  if (cp.zero) {
    for (long m = 0; m <= R; ++m) cm.push_back(CycloElt::from_padic(F.coeff(m), lev));
  } else {
    if (!F.is_exact_poly() && F.tail().is_unknown())
      throw PrecisionError("insufficient truncation");
    long low = std::min(0L, F.low_from(0));
    long A = ctx->N() + 8 - low;
    CycloElt t0 = cp.t0.capped(A);
    std::vector<CycloElt> pw(d + 1, CycloElt::one(ctx, lev));
    for (long e = 1; e <= d; ++e) pw[e] = (pw[e - 1] * t0).capped(A + e);
    for (long m = 0; m <= R; ++m) {
      CycloElt acc = CycloElt::zero(ctx, lev);
      for (long n = m; n <= d; ++n) {
        if (F[n].is_exact_zero()) continue;
        acc += pw[n - m] * (F[n] * Padic::exact(ctx, binom(n, m)));
      }
      if (!F.is_exact_poly()) {
        long off = cdiv(m * cp.num, cp.den);
        long cap = tail_sweep(ctx, F.tail(), d, cp.num, cp.den, off);
        if (cap < 1 && m == 0) throw PrecisionError("insufficient truncation");
        acc = acc.capped(cap);
      }
      cm.push_back(acc);
    }
  }
  std::vector<CycloElt> G;
  G.push_back(cm[0]);
  if (R == 0) return G;
  // a_k = L^k / k!
  std::vector<Padic> a(R + 1, Padic::zero(ctx));
  Padic Lk = Padic::exact(ctx, 1);
  mpz_class fact = 1;
  for (long k = 1; k <= R; ++k) {
    Lk = Lk * c->log_u();
    fact *= k;
    a[k] = Lk / Padic::exact(ctx, fact);
  }
  // Q[m][r] = [s^r] (sum a_k s^k)^m
  std::vector<std::vector<Padic>> Q(R + 1, std::vector<Padic>(R + 1, Padic::zero(ctx)));
  Q[0][0] = Padic::exact(ctx, 1);
  for (long m = 1; m <= R; ++m)
    for (long r = m; r <= R; ++r)
      for (long k = 1; k <= r - (m - 1); ++k)
        if (!Q[m - 1][r - k].is_exact_zero()) Q[m][r] += Q[m - 1][r - k] * a[k];
  std::vector<CycloElt> zp(R + 1, CycloElt::one(ctx, lev));
  for (long m = 1; m <= R; ++m) zp[m] = zp[m - 1] * cp.zeta0;
  for (long r = 1; r <= R; ++r) {
    CycloElt g = CycloElt::zero(ctx, lev);
    for (long m = 1; m <= r; ++m) g += cm[m] * zp[m] * Q[m][r];
    G.push_back(g);
  }
  return G;
}

LeadingTerm leading_from(const std::vector<CycloElt>& G) {
  for (long r = 0; r < static_cast<long>(G.size()); ++r) {
    if (G[r].is_zero()) continue;
    mpz_class f = 1;
    for (long k = 2; k <= r; ++k) f *= k;
    return LeadingTerm{r, G[r], G[r] * Padic::exact(G[r].ctx(), f)};
  }
  throw PrecisionError("vanishes to order > max_order");
}

}  // namespace

CycloElt char_at_gamma1(const IwCtx& c, const DeRhamChar& eta) {
  CycloElt z = CycloElt::zeta_power(c->ctx(), eta.wild_level,
                                    eta.wild_level > 0 ? eta.wild_exp : 0);
  return z * c->u_pow(eta.j);
}

CycloElt char_value(const IwCtx& c, const DeRhamChar& eta, long x) {
  const PadicContext* ctx = c->ctx();
  Padic xj = Padic::exact(ctx, x).pow(eta.j >= 0 ? eta.j : -eta.j);
  if (eta.j < 0) xj = xj.inverse();
  Padic tw = c->omega_pow(x, eta.tame);
  CycloElt r = CycloElt::from_padic(xj * tw, eta.wild_level);
  if (eta.wild_level > 0) {
    long e = c->log_u_index(x, eta.wild_level);
    r = r * CycloElt::zeta_power(ctx, eta.wild_level, e * eta.wild_exp);
  }
  return r;
}

CycloElt evaluate_char(const IwasawaElt& x, const DeRhamChar& eta) {
  CharPoint cp = char_point(x.ictx(), eta);
  return taylor_coeffs(x.ictx(), x.comp(cp.comp), cp, 0)[0];
}

CycloElt derivative_at(const IwasawaElt& x, const DeRhamChar& eta) {
  CharPoint cp = char_point(x.ictx(), eta);
  return taylor_coeffs(x.ictx(), x.comp(cp.comp), cp, 1)[1];
}

LeadingTerm leading_term(const IwasawaElt& x, const DeRhamChar& eta,
                         long max_order) {
  CharPoint cp = char_point(x.ictx(), eta);
  return leading_from(taylor_coeffs(x.ictx(), x.comp(cp.comp), cp, max_order));
}

// ---------------------------------------------------------------------------
// IwasawaCycloElt

IwasawaCycloElt::IwasawaCycloElt(const IwasawaElt& x, int level) : level_(level) {
  long n = cyclo_dim(x.ictx()->p(), level);
  parts_.assign(n, IwasawaElt::zero(x.ictx()));
  parts_[0] = x;
}

IwasawaCycloElt IwasawaCycloElt::scalar(const IwCtx& c, const CycloElt& a) {
  IwasawaCycloElt r;
  r.level_ = a.level();
  for (long i = 0; i < a.dim(); ++i)
    r.parts_.push_back(IwasawaElt::constant(c, a.coord(i)));
  return r;
}

IwasawaCycloElt operator+(const IwasawaCycloElt& a, const IwasawaCycloElt& b) {
  if (a.level_ != b.level_) throw std::invalid_argument("level mismatch");
  IwasawaCycloElt r = a;
  for (size_t i = 0; i < r.parts_.size(); ++i) r.parts_[i] = a.parts_[i] + b.parts_[i];
  return r;
}

IwasawaCycloElt operator-(const IwasawaCycloElt& a, const IwasawaCycloElt& b) {
  if (a.level_ != b.level_) throw std::invalid_argument("level mismatch");
  IwasawaCycloElt r = a;
  for (size_t i = 0; i < r.parts_.size(); ++i) r.parts_[i] = a.parts_[i] - b.parts_[i];
  return r;
}

IwasawaCycloElt operator*(const IwasawaCycloElt& a, const IwasawaCycloElt& b) {
  if (a.level_ != b.level_) throw std::invalid_argument("level mismatch");
  const IwCtx& c = a.parts_[0].ictx();
  long n = static_cast<long>(a.parts_.size());
  std::vector<IwasawaElt> prod(2 * n - 1, IwasawaElt::zero(c));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) prod[i + j] = prod[i + j] + a.parts_[i] * b.parts_[j];
  IwasawaCycloElt r = a;
  for (long i = 0; i < n; ++i) r.parts_[i] = prod[i];
  for (long k = n; k < 2 * n - 1; ++k) {
    CycloElt xk = CycloElt::zeta_power(c->ctx(), a.level_, k);
    for (long t = 0; t < n; ++t) {
      if (xk.coord(t).is_zero()) continue;
      r.parts_[t] = r.parts_[t] + prod[k] * xk.coord(t);
    }
  }
  return r;
}

CycloElt IwasawaCycloElt::evaluate(const DeRhamChar& eta) const {
  const PadicContext* ctx = parts_[0].ctx();
  CycloElt acc = CycloElt::zero(ctx, std::max(level_, eta.wild_level));
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].is_zero()) continue;
    acc += evaluate_char(parts_[i], eta) * CycloElt::zeta_power(ctx, level_, i);
  }
  return acc;
}

CycloElt IwasawaCycloElt::derivative_at(const DeRhamChar& eta) const {
  const PadicContext* ctx = parts_[0].ctx();
  CycloElt acc = CycloElt::zero(ctx, std::max(level_, eta.wild_level));
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].is_zero()) continue;
    acc += iwk::derivative_at(parts_[i], eta) * CycloElt::zeta_power(ctx, level_, i);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// FractionElt

FractionElt::FractionElt(IwasawaElt num) : c_(num.ictx()) {
  num_.push_back(std::move(num));
}

FractionElt::FractionElt(std::vector<IwasawaElt> num, std::vector<IwasawaElt> den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (!num_.empty()) {
    c_ = num_[0].ictx();
  } else if (!den_.empty()) {
    c_ = den_[0].ictx();
  } else {
    throw std::invalid_argument("empty fraction needs a context; use one()");
  }
}

FractionElt FractionElt::one(const IwCtx& c) {
  FractionElt r;
  r.c_ = c;
  return r;
}

IwasawaElt FractionElt::num_product() const {
  IwasawaElt r = IwasawaElt::one(c_);
  for (const auto& x : num_) r = r * x;
  return negate_ ? -r : r;
}

IwasawaElt FractionElt::den_product() const {
  IwasawaElt r = IwasawaElt::one(c_);
  for (const auto& x : den_) r = r * x;
  return r;
}

FractionElt operator*(const FractionElt& a, const FractionElt& b) {
  FractionElt r = a;
  r.num_.insert(r.num_.end(), b.num_.begin(), b.num_.end());
  r.den_.insert(r.den_.end(), b.den_.begin(), b.den_.end());
  r.negate_ = a.negate_ != b.negate_;
  return r;
}

FractionElt FractionElt::inverse() const {
  FractionElt r = *this;
  std::swap(r.num_, r.den_);
  return r;
}

FractionElt FractionElt::twist(long k, long tame) const {
  FractionElt r = *this;
  for (auto& x : r.num_) x = x.twist(k, tame);
  for (auto& x : r.den_) x = x.twist(k, tame);
  return r;
}

FractionElt FractionElt::involution() const {
  FractionElt r = *this;
  for (auto& x : r.num_) x = x.involution();
  for (auto& x : r.den_) x = x.involution();
  return r;
}

FractionElt FractionElt::negated() const {
  FractionElt r = *this;
  r.negate_ = !negate_;
  return r;
}

bool FractionElt::denominator_ok() const {
  long half = c_->dt() / 2;
  int n = c_->ncomp();
  for (const auto& x : den_) {
    for (int i = 0; i < n; ++i) {
      bool hit = false;
      for (long k = 0; k <= half && !hit; ++k) {
        for (long sgn : {1L, -1L}) {
          if (k == 0 && sgn < 0) continue;
          DeRhamChar eta{sgn * k, i - sgn * k, 0, 0, {}};
          if (!evaluate_char(x, eta).is_zero()) {
            hit = true;
            break;
          }
        }
      }
      if (!hit) return false;
    }
  }
  return true;
}

bool FractionElt::equals(const FractionElt& o, long d) const {
  IwasawaElt lhs = num_product() * o.den_product();
  IwasawaElt rhs = o.num_product() * den_product();
  return agree(lhs, rhs, d);
}

CycloElt evaluate_char(const FractionElt& x, const DeRhamChar& eta) {
  const PadicContext* ctx = x.ictx()->ctx();
  CycloElt r = CycloElt::one(ctx, eta.wild_level);
  for (const auto& f : x.num()) r = r * evaluate_char(f, eta);
  for (const auto& g : x.den()) {
    CycloElt v = evaluate_char(g, eta);
    if (v.is_zero()) throw std::domain_error("zero denominator at eta");
    r = r / v;
  }
  return x.sign_negative() ? -r : r;
}

LeadingTerm leading_term(const FractionElt& x, const DeRhamChar& eta,
                         long max_order) {
  const PadicContext* ctx = x.ictx()->ctx();
  LeadingTerm out{0, CycloElt::one(ctx, eta.wild_level), CycloElt()};
  for (const auto& f : x.num()) {
    LeadingTerm t = leading_term(f, eta, max_order);
    out.order += t.order;
    out.taylor = out.taylor * t.taylor;
  }
  for (const auto& g : x.den()) {
    LeadingTerm t = leading_term(g, eta, max_order);
    out.order -= t.order;
    out.taylor = out.taylor / t.taylor;
  }
  if (x.sign_negative()) out.taylor = -out.taylor;
  mpz_class f = 1;
  for (long k = 2; k <= out.order; ++k) f *= k;
  out.derivative = out.taylor * Padic::exact(ctx, f);
  return out;
}

FractionElt mu_element(const IwCtx& c, long n) {
  std::vector<IwasawaElt> num, den;
  for (long i = 0; i < n; ++i) num.push_back(IwasawaElt::ell(c, i));
  for (long i = -1; i >= n; --i) den.push_back(IwasawaElt::ell(c, i));
  if (num.empty() && den.empty()) return FractionElt::one(c);
  return FractionElt(std::move(num), std::move(den));
}

FractionElt ell_of_rep(const IwCtx& c, const std::vector<long>& weights) {
  FractionElt r = FractionElt::one(c);
  for (long n : weights) r = r * mu_element(c, n);
  return r;
}

CycloElt fudge_factor(const IwCtx& c, long h, const DeRhamChar& eta) {
  if (eta.j < 0 || eta.j > h - 1)
    throw std::invalid_argument("fudge factor: j outside [0, h-1]");
  LeadingTerm num = leading_term(mu_element(c, h), eta, 2);
  // gamma_1 - eta(gamma_1): Taylor data of gamma_1 with the constant removed
  CharPoint cp = char_point(c, eta);
  std::vector<CycloElt> G = taylor_coeffs(c, IwasawaElt::gamma1(c).comp(cp.comp), cp, 2);
  G[0] = G[0] - cp.zeta0;
  LeadingTerm den = leading_from(G);
  if (num.order != den.order)
    throw PrecisionError("fudge factor: orders do not cancel");
  return num.taylor / den.taylor;
}

CycloElt fudge_closed_form(const IwCtx& c, long h, const DeRhamChar& eta) {
  long j = eta.j;
  if (j < 0 || j > h - 1)
    throw std::invalid_argument("fudge factor: j outside [0, h-1]");
  mpz_class a = 1, b = 1;
  for (long k = 2; k <= h - j - 1; ++k) a *= k;
  for (long k = 2; k <= j; ++k) b *= k;
  mpz_class v = a * b;
  if ((h - j - 1) % 2) v = -v;
  const PadicContext* ctx = c->ctx();
  CycloElt den = char_at_gamma1(c, eta) * c->log_u();
  return CycloElt::from_padic(Padic::exact(ctx, v), eta.wild_level) / den;
}

// ---------------------------------------------------------------------------
// Mellin transform

namespace {

struct MellinBasis {
  long D = 0;
  long A = 0;  // absolute precision kept in the basis
  std::vector<std::vector<mpz_class>> S;  // coefficients of ((1+pi)^u - 1)^k
  // B[b][n][m] = [pi^m] (gamma_1 - 1)^n (1+pi)^{omega(b)}
  std::vector<std::vector<std::vector<Padic>>> B;
};

std::mutex g_mellin_mu;
std::map<std::pair<const PadicContext*, long>, std::shared_ptr<MellinBasis>> g_mellin;

std::vector<Padic> gamma_minus_one_apply(const PadicContext* ctx,
                                         const MellinBasis& mb,
                                         const std::vector<Padic>& h) {
  long D = mb.D;
  std::vector<Padic> r(D + 1, Padic::zero(ctx));
  for (long k = 0; k <= D; ++k) {
    if (h[k].is_exact_zero()) continue;
    const auto& row = mb.S[k];
    for (long m = k; m <= D; ++m)
      if (row[m] != 0) r[m] += h[k] * Padic::exact(ctx, row[m]);
  }
  for (long m = 0; m <= D; ++m) r[m] = (r[m] - h[m]).capped(mb.A);
  return r;
}

std::shared_ptr<const MellinBasis> mellin_basis(const PadicContext* ctx, long D,
                                                long nmax) {
  std::lock_guard<std::mutex> lock(g_mellin_mu);
  auto key = std::make_pair(ctx, D);
  auto& slot = g_mellin[key];
  long p = ctx->p();
  if (!slot) {
    auto mb = std::make_shared<MellinBasis>();
    mb->D = D;
    mb->A = ctx->N() + 24;
    long u = p + 1;
    std::vector<mpz_class> s(D + 1, 0);
    for (long i = 1; i <= std::min(u, D); ++i) s[i] = binom(u, i);
    mb->S.push_back(std::vector<mpz_class>(D + 1, 0));
    mb->S[0][0] = 1;
    for (long k = 1; k <= D; ++k) {
      const auto& prev = mb->S[k - 1];
      std::vector<mpz_class> row(D + 1, 0);
      for (long i = k - 1; i <= D; ++i) {
        if (prev[i] == 0) continue;
        for (long t = 1; t <= u && i + t <= D; ++t) row[i + t] += prev[i] * s[t];
      }
      mb->S.push_back(std::move(row));
    }
    mb->B.resize(p);
    for (long b = 1; b < p; ++b) {
      Padic w;
      if (b == 1) {
        w = Padic::exact(ctx, 1);
      } else if (b == p - 1) {
        w = Padic::exact(ctx, -1);
      } else {
        w = teichmuller(ctx, b, ctx->N() + D + 32);
      }
      std::vector<Padic> row = binomial_row(w, D);
      for (auto& x : row) x = x.capped(mb->A);
      mb->B[b].push_back(std::move(row));
    }
    slot = mb;
  }
  auto mb = slot;
  for (long b = 1; b < p; ++b)
    while (static_cast<long>(mb->B[b].size()) <= nmax)
      mb->B[b].push_back(gamma_minus_one_apply(ctx, *mb, mb->B[b].back()));
  return mb;
}

}  // namespace

PSeries mellin(const IwasawaElt& x, long deg) {
  const IwCtx& c = x.ictx();
  const PadicContext* ctx = c->ctx();
  long p = ctx->p();
  int nc = c->ncomp();
  long maxdeg = 0, minlow = 0;
  for (const auto& f : x.comps()) {
    if (!f.is_exact_poly() && f.tail().is_unknown())
      throw PrecisionError("Mellin transform of a series with unknown tail");
    maxdeg = std::max(maxdeg, f.deg());
    minlow = std::min(minlow, f.low_from(0));
    if (!f.is_exact_poly()) minlow = std::min(minlow, f.tail().base);
  }
  long vf = vp_fact(p, deg);
  long nmax = std::min(maxdeg, ctx->N() + vf + 4 - minlow + 2 * ctx->flog(maxdeg + 1));
  auto mb = mellin_basis(ctx, deg, nmax);
  Padic inv = Padic::exact(ctx, p - 1).inverse();
  std::vector<Padic> out(deg + 1, Padic::zero(ctx));
  for (long b = 1; b < p; ++b) {
    std::vector<Padic> wi;
    for (int i = 0; i < nc; ++i) wi.push_back(c->omega_pow(b, -i) * inv);
    for (long n = 0; n <= nmax; ++n) {
      Padic g = Padic::zero(ctx);
      for (int i = 0; i < nc; ++i) {
        const PSeries& f = x.comp(i);
        if (n > f.deg() || f[n].is_exact_zero()) continue;
        g += f[n] * wi[i];
      }
      if (g.is_exact_zero()) continue;
      const auto& Bn = mb->B[b][n];
      for (long m = 0; m <= deg; ++m)
        if (!Bn[m].is_exact_zero()) out[m] += g * Bn[m];
    }
  }
  // terms of index n > nmax
  long rest = kInfPrec;
  for (const auto& f : x.comps()) {
    if (f.deg() > nmax) rest = std::min(rest, saturating_add(f.low_from(nmax + 1), nmax + 1));
    if (!f.is_exact_poly()) rest = std::min(rest, tail_sweep(ctx, f.tail(), f.deg(), 1, 1, 0));
  }
  if (rest < kInfPrec)
    for (long m = 0; m <= deg; ++m) out[m] = out[m].capped(rest - vp_fact(p, m));
  Tail t = x.is_integral() ? Tail::bounded(0, 0) : Tail::unknown();
  return PSeries(std::move(out), t);
}

bool in_psi_kernel(const PSeries& f) { return psi(f).is_zero(); }

std::vector<Padic> measure_masses(const PSeries& f, int k) { return masses(f, k + 1); }

IwasawaElt mellin_inverse(const IwCtx& c, const PSeries& f, int k) {
  const PadicContext* ctx = c->ctx();
  long p = ctx->p();
  if (!in_psi_kernel(f)) throw std::domain_error("not in psi=0 kernel");
  std::vector<Padic> m = measure_masses(f, k);
  long q = static_cast<long>(m.size());
  for (long a = 0; a < q; a += p)
    if (!m[a].is_zero()) throw std::domain_error("not in psi=0 kernel");
  long pk = ipow(p, k);
  int nc = c->ncomp();
  std::vector<std::vector<Padic>> xb(nc, std::vector<Padic>(pk, Padic::zero(ctx)));
  for (long a = 1; a < q; ++a) {
    if (a % p == 0 || m[a].is_exact_zero()) continue;
    long e = c->log_u_index(a, k);
    for (int i = 0; i < nc; ++i) xb[i][e] += m[a] * c->omega_pow(a, i);
  }
  std::vector<PSeries> comps;
  for (int i = 0; i < nc; ++i) comps.push_back(from_x_basis(xb[i]));
  return IwasawaElt(c, std::move(comps));
}

CycloElt evaluate_measure_series(const IwCtx& c, const PSeries& f,
                                 const DeRhamChar& eta) {
  const PadicContext* ctx = c->ctx();
  long p = ctx->p();
  if (eta.j < 0)
    throw std::domain_error("measure evaluation needs j >= 0");
  if (eta.wild_level == 0 && eta.tame_mod(p) == 0)
    return CycloElt::from_padic(moment(f, eta.j), 0);
  PSeries g = f;
  for (long i = 0; i < eta.j; ++i) g = deriv(g);
  int L = eta.wild_level + 1;
  std::vector<Padic> m = masses(g, L);
  DeRhamChar fin = eta;
  fin.j = 0;
  CycloElt acc = CycloElt::zero(ctx, eta.wild_level);
  for (long a = 1; a < static_cast<long>(m.size()); ++a) {
    if (a % p == 0 || m[a].is_exact_zero()) continue;
    acc += char_value(c, fin, a) * m[a];
  }
  return acc;
}

}  // namespace iwk
