// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_SERIES_HPP
#define IWK_SERIES_HPP

#include <gmpxx.h>

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <vector>

#include "iwk/cyclotomic.hpp"
#include "iwk/padic.hpp"
#include "iwk/unramified.hpp"

namespace iwk {

// What is known about the coefficients past the stored degree.
// kBounded: v(a_n) >= base - growth * floor(log_p n).
struct Tail {
  enum class Kind { kExact, kBounded, kUnknown };
  Kind kind = Kind::kExact;
  long base = kInfPrec;
  long growth = 0;

  static Tail exact() { return {}; }
  static Tail bounded(long base, long growth) {
    return {Kind::kBounded, base, growth};
  }
  static Tail unknown() { return {Kind::kUnknown, -kInfPrec, 0}; }
  bool is_exact() const { return kind == Kind::kExact; }
  bool is_unknown() const { return kind == Kind::kUnknown; }
  long at(const PadicContext* ctx, long n) const;
};

Tail tail_min(const Tail& a, const Tail& b);
// Bound at index n >= 1 shifted by `shift` valuation.
Tail tail_shift(const Tail& a, long shift);

// Helpers shared by the template below.
mpz_class binom(long n, long k);
// Stirling numbers of the second kind S(k, m), m <= k.
std::vector<mpz_class> stirling2_row(long k);
// Coefficients of ((1+pi)^p - 1)^k modulo pi^{deg+1}, k <= deg.
std::shared_ptr<const std::vector<std::vector<mpz_class>>> phi_pi_powers(
    unsigned p, long deg);
// min over n > from of b - g flog n + slope(n); slope given as n*num/den - off.
long tail_sweep(const PadicContext* ctx, const Tail& t, long from, long num,
                long den, long off);

template <class R>
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(std::vector<R> c, Tail tail = Tail::exact())
      : c_(std::move(c)), tail_(tail) {
    if (c_.empty()) throw std::invalid_argument("series needs a coefficient");
  }

  static TruncSeries zero(const R& like) { return TruncSeries({like.zero_like()}); }
  static TruncSeries constant(const R& a) { return TruncSeries({a}); }
  static TruncSeries one(const R& like) { return TruncSeries({like.one_like()}); }
  static TruncSeries pi(const R& like) {
    return TruncSeries({like.zero_like(), like.one_like()});
  }

  long deg() const { return static_cast<long>(c_.size()) - 1; }
  const PadicContext* ctx() const { return c_[0].ctx(); }
  const R& operator[](long i) const { return c_[i]; }
  const std::vector<R>& coeffs() const { return c_; }
  const Tail& tail() const { return tail_; }
  bool is_exact_poly() const { return tail_.is_exact(); }
  R zero_like() const { return c_[0].zero_like(); }

  // Coefficient at any index; beyond deg it is a zero carrying the tail bound.
  R coeff(long i) const {
    if (i <= deg()) return c_[i];
    if (tail_.is_exact()) return zero_like();
    if (tail_.is_unknown())
      throw PrecisionError("coefficient beyond the known degree");
    return zero_like().capped(tail_.at(ctx(), i));
  }

  // First index whose coefficient is not an exact zero.
  long order() const {
    for (long i = 0; i <= deg(); ++i)
      if (!c_[i].is_exact_zero()) return i;
    return tail_.is_exact() ? kInfPrec : deg() + 1;
  }

  long low_from(long k) const {
    long m = kInfPrec;
    for (long i = std::max(0L, k); i <= deg(); ++i)
      m = std::min(m, c_[i].val_lower());
    return m;
  }

  // Tail bound for indices >= k.
  Tail tail_from(long k) const {
    long lo = low_from(k);
    if (tail_.is_unknown()) return tail_;
    if (tail_.is_exact()) {
      if (lo >= kInfPrec) return Tail::exact();
      return Tail::bounded(lo, 0);
    }
    return Tail::bounded(std::min(lo, tail_.base), tail_.growth);
  }

  TruncSeries truncate(long d) const {
    if (d >= deg()) return *this;
    std::vector<R> c(c_.begin(), c_.begin() + d + 1);
    return TruncSeries(std::move(c), tail_from(d + 1));
  }

  // Pads an exact polynomial with zeros up to degree d.
  TruncSeries padded(long d) const {
    if (d <= deg()) return *this;
    std::vector<R> c = c_;
    if (!tail_.is_exact())
      throw PrecisionError("cannot extend a series past its known degree");
    c.resize(d + 1, zero_like());
    return TruncSeries(std::move(c), tail_);
  }

  // Exact polynomials keep their degree; inexact ones keep what is known.
  TruncSeries fit(long d) const {
    return d > deg() ? (tail_.is_exact() ? padded(d) : *this) : truncate(d);
  }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }

  TruncSeries capped(long cap) const {
    TruncSeries s = *this;
    for (auto& c : s.c_) c = c.capped(cap);
    return s;
  }

  TruncSeries map_coeffs(R (*fn)(const R&)) const {
    TruncSeries s = *this;
    for (auto& c : s.c_) c = fn(c);
    return s;
  }

  TruncSeries frob_coeffs() const {
    TruncSeries s = *this;
    for (auto& c : s.c_) c = c.frob();
    return s;
  }

  TruncSeries operator-() const {
    TruncSeries s = *this;
    for (auto& c : s.c_) c = -c;
    return s;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    long d;
    Tail t;
    if (a.tail_.is_exact() && b.tail_.is_exact()) {
      d = std::max(a.deg(), b.deg());
      t = Tail::exact();
    } else {
      long da = a.tail_.is_exact() ? kInfPrec : a.deg();
      long db = b.tail_.is_exact() ? kInfPrec : b.deg();
      d = std::min(da, db);
      t = tail_min(a.tail_from(d + 1), b.tail_from(d + 1));
    }
    std::vector<R> c;
    c.reserve(d + 1);
    for (long i = 0; i <= d; ++i) {
      if (i <= a.deg() && i <= b.deg()) {
        c.push_back(a.c_[i] + b.c_[i]);
      } else if (i <= a.deg()) {
        c.push_back(a.c_[i]);
      } else {
        c.push_back(b.c_[i]);
      }
    }
    return TruncSeries(std::move(c), t);
  }

  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    return a + (-b);
  }

  friend TruncSeries operator*(const TruncSeries& a, const R& s) {
    TruncSeries r = a;
    for (auto& c : r.c_) c = c * s;
    if (!r.tail_.is_exact() && !r.tail_.is_unknown())
      r.tail_ = tail_shift(r.tail_, s.val_lower());
    return r;
  }
  friend TruncSeries operator*(const R& s, const TruncSeries& a) { return a * s; }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    return mul(a, b, -1);
  }

  // Product truncated at degree cap when cap >= 0.
  static TruncSeries mul(const TruncSeries& a, const TruncSeries& b, long cap) {
    long oa = a.order(), ob = b.order();
    bool ea = a.tail_.is_exact(), eb = b.tail_.is_exact();
    if ((ea && oa >= kInfPrec) || (eb && ob >= kInfPrec))
      return TruncSeries::zero(a.zero_like());
    long d;
    if (ea && eb) {
      d = a.deg() + b.deg();
    } else {
      long da = ea ? kInfPrec : a.deg();
      long db = eb ? kInfPrec : b.deg();
      d = std::min(saturating_add(da, std::min(ob, kInfPrec)),
                   saturating_add(db, std::min(oa, kInfPrec)));
    }
    bool cut = cap >= 0 && cap < d;
    if (cut) d = cap;
    std::vector<R> c(d + 1, a.zero_like());
    for (long i = oa; i <= std::min(d, a.deg()); ++i) {
      if (a.c_[i].is_exact_zero()) continue;
      long jmax = std::min(d - i, b.deg());
      for (long j = ob; j <= jmax; ++j) {
        if (b.c_[j].is_exact_zero()) continue;
        c[i + j] += a.c_[i] * b.c_[j];
      }
    }
    Tail t;
    if (ea && eb && !cut) {
      t = Tail::exact();
    } else {
      long la = a.low_from(0), lb = b.low_from(0);
      t = Tail::bounded(saturating_add(la, lb), 0);
      if (a.tail_.is_unknown() || b.tail_.is_unknown()) {
        t = Tail::unknown();
      } else {
        if (!ea) {
          Tail x = tail_shift(a.tail_, std::min(lb, eb ? kInfPrec : b.tail_.base));
          x.growth += eb ? 0 : b.tail_.growth;
          t = tail_min(t, x);
        }
        if (!eb) {
          Tail x = tail_shift(b.tail_, std::min(la, ea ? kInfPrec : a.tail_.base));
          x.growth += ea ? 0 : a.tail_.growth;
          t = tail_min(t, x);
        }
      }
    }
    return TruncSeries(std::move(c), t);
  }

  // Coefficients 0..d agree at the attained precision.
  friend bool agree(const TruncSeries& a, const TruncSeries& b, long d) {
    if (d > a.deg() && !a.tail_.is_exact()) return false;
    if (d > b.deg() && !b.tail_.is_exact()) return false;
    for (long i = 0; i <= d; ++i)
      if (!(a.coeff(i) - b.coeff(i)).is_zero()) return false;
    return true;
  }

  // Minimum absolute precision over coefficients 0..d.
  long absprec_upto(long d) const {
    long m = kInfPrec;
    for (long i = 0; i <= std::min(d, deg()); ++i)
      m = std::min(m, c_[i].min_absprec());
    return m;
  }

 private:
  std::vector<R> c_;
  Tail tail_;
};

using PSeries = TruncSeries<Padic>;

inline Padic frob_inv(const Padic& x) { return x; }
inline CycloElt frob_inv(const CycloElt& x) { return x; }
inline UnramifiedElt frob_inv(const UnramifiedElt& x) {
  return x.frobenius_power(-1);
}

template <class R>
R scale_int(const R& a, const mpz_class& n) {
  if (n == 0) return a.zero_like();
  return a * Padic::exact(a.ctx(), n);
}

// ---------------------------------------------------------------------------
// Operators on R[[pi]].

// f(s) for s with s(0) = 0, modulo pi^{deg+1}.
template <class R, class S>
TruncSeries<R> compose(const TruncSeries<R>& f, const TruncSeries<S>& s,
                       long deg) {
  if (!s[0].is_exact_zero())
    throw std::invalid_argument("substitution needs zero constant term");
  long sd = s.is_exact_poly() ? kInfPrec : s.deg();
  deg = std::min(deg, sd);
  long fd = f.is_exact_poly() ? f.deg() : std::min(f.deg(), deg);
  deg = f.is_exact_poly() ? deg : std::min(deg, f.deg());
  std::vector<R> acc(deg + 1, f.zero_like());
  // powers of s as R-free coefficient vectors
  std::vector<S> pw(deg + 1, s[0].zero_like());
  pw[0] = s[0].one_like();
  for (long k = 0; k <= std::min(fd, deg); ++k) {
    if (k > 0) {
      std::vector<S> nx(deg + 1, s[0].zero_like());
      for (long i = k - 1; i <= deg; ++i) {
        if (pw[i].is_exact_zero()) continue;
        for (long j = 1; i + j <= deg && j <= s.deg(); ++j) {
          if (s[j].is_exact_zero()) continue;
          nx[i + j] += pw[i] * s[j];
        }
      }
      pw = std::move(nx);
    }
    if (f[k].is_exact_zero()) continue;
    for (long i = k; i <= deg; ++i)
      if (!pw[i].is_exact_zero()) acc[i] += f[k] * pw[i];
  }
  bool closed = f.is_exact_poly() && s.is_exact_poly() &&
                (fd == 0 || s.deg() <= deg / std::max(fd, 1L));
  Tail t = closed ? Tail::exact() : Tail::unknown();
  if (!closed && !f.tail().is_unknown()) {
    long ls = s.low_from(0);
    if (ls >= 0 && (s.is_exact_poly() ||
                    (s.tail().base >= 0 && s.tail().growth == 0))) {
      Tail tf = f.tail_from(deg + 1);
      t = Tail::bounded(std::min(f.low_from(0), tf.base), tf.growth);
    }
  }
  return TruncSeries<R>(std::move(acc), t);
}

// Coefficients of (1 + pi)^c up to degree deg.
PSeries one_plus_pi_pow(const Padic& c, long deg);
// log(1 + pi) to degree deg.
PSeries log1p_series(const PadicContext* ctx, long deg);

// Conversion between the pi basis and the X = 1 + pi basis (exact polys).
template <class R>
std::vector<R> to_x_basis(const TruncSeries<R>& f) {
  long d = f.deg();
  std::vector<R> b(d + 1, f.zero_like());
  for (long m = 0; m <= d; ++m) {
    if (f[m].is_exact_zero()) continue;
    for (long i = 0; i <= m; ++i) {
      mpz_class c = binom(m, i);
      if ((m - i) % 2) c = -c;
      b[i] += scale_int(f[m], c);
    }
  }
  return b;
}

template <class R>
TruncSeries<R> from_x_basis(const std::vector<R>& b) {
  long d = static_cast<long>(b.size()) - 1;
  std::vector<R> f(d + 1, b[0].zero_like());
  for (long i = 0; i <= d; ++i) {
    if (b[i].is_exact_zero()) continue;
    for (long m = 0; m <= i; ++m) f[m] += scale_int(b[i], binom(i, m));
  }
  return TruncSeries<R>(std::move(f), Tail::exact());
}

// phi: pi -> (1 + pi)^p - 1, with Frobenius on coefficients.
template <class R>
TruncSeries<R> phi(const TruncSeries<R>& f) {
  unsigned p = f.ctx()->p();
  if (f.is_exact_poly()) {
    std::vector<R> b = to_x_basis(f);
    std::vector<R> bp(p * f.deg() + 1, f.zero_like());
    for (long i = 0; i <= f.deg(); ++i) bp[p * i] = b[i].frob();
    return from_x_basis(bp);
  }
  long d = f.deg();
  auto tab = phi_pi_powers(p, d);
  std::vector<R> c(d + 1, f.zero_like());
  for (long k = 0; k <= d; ++k) {
    if (f[k].is_exact_zero()) continue;
    R fk = f[k].frob();
    const auto& row = (*tab)[k];
    for (long m = k; m <= d; ++m)
      if (row[m] != 0) c[m] += scale_int(fk, row[m]);
  }
  Tail t = f.tail().is_unknown()
               ? f.tail()
               : Tail::bounded(std::min(f.low_from(0), f.tail().base),
                               f.tail().growth);
  return TruncSeries<R>(std::move(c), t);
}

// psi, the left inverse of phi, through the X-basis rule.  For a series
// with an inexact tail the contribution of the unknown coefficients to the
// coefficient of pi^m has valuation >= floor(i/p) - m for pi^i.
template <class R>
TruncSeries<R> psi(const TruncSeries<R>& f) {
  const PadicContext* ctx = f.ctx();
  unsigned p = ctx->p();
  TruncSeries<R> known(f.coeffs(), Tail::exact());
  std::vector<R> b = to_x_basis(known);
  std::vector<R> g(f.deg() / p + 1, f.zero_like());
  for (long k = 0; k * static_cast<long>(p) <= f.deg(); ++k)
    g[k] = frob_inv(b[k * p]);
  TruncSeries<R> out = from_x_basis(g);
  if (f.is_exact_poly()) return out;
  if (f.tail().is_unknown())
    throw PrecisionError("psi of a series with unknown tail");
  std::vector<R> c;
  for (long m = 0; m <= out.deg(); ++m) {
    long cap = tail_sweep(ctx, f.tail(), f.deg(), 1, p, m);
    if (cap < 1 && m > 0) break;
    c.push_back(out[m].capped(cap));
  }
  return TruncSeries<R>(std::move(c), Tail::unknown());
}

// The derivation (1 + pi) d/dpi; an inexact series loses its top degree.
template <class R>
TruncSeries<R> deriv(const TruncSeries<R>& f) {
  long d = f.is_exact_poly() ? f.deg() : f.deg() - 1;
  if (d < 0) d = 0;
  std::vector<R> c(d + 1, f.zero_like());
  for (long m = 0; m <= d; ++m) {
    R a = f.coeff(m + 1);
    if (!a.is_exact_zero()) c[m] += scale_int(a, m + 1);
    if (m > 0 && !f[m].is_exact_zero()) c[m] += scale_int(f[m], m);
  }
  Tail t = f.tail();
  if (t.kind == Tail::Kind::kBounded) {
    Tail tf = f.tail_from(d + 1);
    t = Tail::bounded(tf.base - tf.growth, tf.growth);
  }
  return TruncSeries<R>(std::move(c), t);
}

// t = log(1 + pi) as a series over the coefficient ring of `like`.
template <class R>
TruncSeries<R> t_series(const R& like, long deg) {
  PSeries t = log1p_series(like.ctx(), deg);
  std::vector<R> c;
  for (long m = 0; m <= deg; ++m) c.push_back(like.one_like() * t[m]);
  return TruncSeries<R>(std::move(c), t.tail());
}

// (t d - j) f to degree deg (default: the degree of f, minus one when f
// is inexact).
template <class R>
TruncSeries<R> ell_apply(long j, const TruncSeries<R>& f, long deg = -1) {
  if (deg < 0) deg = f.is_exact_poly() ? f.deg() : f.deg() - 1;
  TruncSeries<R> df = deriv(f);
  TruncSeries<R> t = t_series(f[0], std::max(deg, 1L));
  TruncSeries<R> r = TruncSeries<R>::mul(t, df, deg);
  if (j != 0) r = r - f * Padic::exact(f.ctx(), j);
  return r.truncate(deg);
}

// f((1 + pi)^c - 1).
template <class R>
TruncSeries<R> gamma_action(const Padic& c, const TruncSeries<R>& f, long deg) {
  PSeries s = one_plus_pi_pow(c, deg) - PSeries::one(c);
  std::vector<Padic> sc = s.coeffs();
  sc[0] = Padic::zero(c.ctx());
  return compose(f, PSeries(sc, s.tail()), deg);
}

// y with (1 - phi) y = x for x(0) = 0, by summing phi^n x to degree deg.
template <class R>
TruncSeries<R> solve_one_minus_phi(const TruncSeries<R>& x, long deg) {
  if (!x[0].is_zero())
    throw std::domain_error("nonconvergent: constant term obstructs (1-phi)");
  TruncSeries<R> term = x.fit(deg).truncate(deg);
  long target = std::min(term.absprec_upto(deg),
                         saturating_add(term.low_from(0), x.ctx()->N()));
  term = term.capped(target);
  TruncSeries<R> y = term;
  long cap = 4 * x.ctx()->N() + 16;
  for (long pass = 0; pass < cap; ++pass) {
    term = phi(term).truncate(deg).capped(target);
    if (term.is_zero()) return y;
    y = y + term;
  }
  throw PrecisionError("nonconvergent: (1-phi) pass cap reached");
}

// 1/f for f with unit constant term and integral coefficients.
template <class R>
TruncSeries<R> series_inverse(const TruncSeries<R>& f, long deg) {
  if (f.low_from(0) < 0 || (!f.is_exact_poly() && f.tail().base < 0))
    throw std::domain_error("series inverse expects integral coefficients");
  if (!f.is_exact_poly()) deg = std::min(deg, f.deg());
  if (f[0].val_lower() != 0)
    throw std::domain_error("constant term is not a unit");
  R inv0 = f[0].inverse().capped(f.ctx()->N());
  std::vector<R> b(deg + 1, f.zero_like());
  b[0] = inv0;
  for (long n = 1; n <= deg; ++n) {
    R acc = f.zero_like();
    for (long k = 1; k <= n; ++k) {
      R a = f.coeff(k);
      if (a.is_exact_zero()) continue;
      acc += a * b[n - k];
    }
    b[n] = -(inv0 * acc);
  }
  return TruncSeries<R>(std::move(b), Tail::bounded(0, 0));
}

// d^k f at pi = 0, i.e. sum_m f_m m! S(k, m).
template <class R>
R moment(const TruncSeries<R>& f, long k) {
  if (k > f.deg() && !f.is_exact_poly())
    throw PrecisionError("moment needs more coefficients");
  const auto& row = stirling2_row(k);
  R acc = f.zero_like();
  mpz_class fact = 1;
  for (long m = 0; m <= k; ++m) {
    if (m > 0) fact *= m;
    if (row[m] == 0) continue;
    R c = f.coeff(m);
    if (c.is_exact_zero()) continue;
    acc += scale_int(c, fact * row[m]);
  }
  return acc;
}

// Masses of the measure with transform f on the classes a mod p^n:
// sum of the X-basis coefficients b_i over i = a mod p^n.
template <class R>
std::vector<R> masses(const TruncSeries<R>& f, int n) {
  const PadicContext* ctx = f.ctx();
  long q = ipow(ctx->p(), n);
  std::vector<R> b = to_x_basis(TruncSeries<R>(f.coeffs(), Tail::exact()));
  std::vector<R> m(q, f.zero_like());
  for (long i = 0; i < static_cast<long>(b.size()); ++i) m[i % q] += b[i];
  if (f.is_exact_poly()) return m;
  if (n == 0) return {f[0]};
  if (f.tail().is_unknown()) throw PrecisionError("masses of unknown tail");
  long cap = tail_sweep(ctx, f.tail(), f.deg(), 1, cyclo_dim(ctx->p(), n), n);
  for (auto& x : m) x = x.capped(cap);
  return m;
}

// psi through the average over mu_p of f(zeta(1+pi) - 1) in Z_p[zeta_p].
// Exact polynomials only.
PSeries psi_by_average(const PSeries& f);

}  // namespace iwk

#endif
