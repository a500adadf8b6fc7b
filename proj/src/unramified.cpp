// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/unramified.hpp"

#include <algorithm>

#include "iwk/cyclotomic.hpp"
#include "iwk/linalg.hpp"

namespace iwk {

namespace {

using FpPoly = std::vector<long>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long fp_inv(long a, long p) {
  long r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, long p) {
  fp_trim(a);
  long dm = static_cast<long>(m.size()) - 1;
  long lead_inv = fp_inv(m.back(), p);
  while (static_cast<long>(a.size()) - 1 >= dm) {
    long c = a.back() * lead_inv % p;
    long shift = static_cast<long>(a.size()) - 1 - dm;
    for (long i = 0; i <= dm; ++i)
      a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    fp_trim(a);
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return fp_mod(c, m, p);
}

FpPoly fp_powmod(FpPoly a, long e, const FpPoly& m, long p) {
  FpPoly r = {1};
  a = fp_mod(a, m, p);
  while (e > 0) {
    if (e & 1) r = fp_mulmod(r, a, m, p);
    e >>= 1;
    if (e) a = fp_mulmod(a, a, m, p);
  }
  return fp_mod(r, m, p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

// Residue of index idx written in base p.
FpPoly residue_of_index(long idx, long p, int f) {
  FpPoly r(f, 0);
  for (int i = 0; i < f; ++i) {
    r[i] = idx % p;
    idx /= p;
  }
  return r;
}

UnramifiedElt eval_poly(const std::vector<long>& P, const UnramifiedElt& y) {
  UnramifiedElt acc = UnramifiedElt::zero(y.field());
  for (long i = static_cast<long>(P.size()) - 1; i >= 0; --i)
    acc = acc * y + UnramifiedElt::from_padic(y.field(),
                                              Padic::exact(y.ctx(), P[i]));
  return acc;
}

std::vector<long> derivative(const std::vector<long>& P) {
  std::vector<long> d;
  for (size_t i = 1; i < P.size(); ++i) d.push_back(static_cast<long>(i) * P[i]);
  if (d.empty()) d.push_back(0);
  return d;
}

UnramifiedElt newton_root(const std::vector<long>& P, UnramifiedElt y) {
  std::vector<long> dP = derivative(P);
  y = y.capped(std::min(y.min_absprec(), y.ctx()->N()));
  for (int it = 0; it < 80; ++it) {
    UnramifiedElt fy = eval_poly(P, y);
    if (fy.is_zero()) return y;
    y = y - fy * eval_poly(dP, y).inverse();
  }
  throw PrecisionError("Hensel lifting did not converge at this precision");
}

}  // namespace

bool fp_irreducible(const std::vector<long>& poly, long p) {
  FpPoly P = poly;
  for (auto& c : P) c = ((c % p) + p) % p;
  fp_trim(P);
  long f = static_cast<long>(P.size()) - 1;
  if (f < 1) return false;
  if (f == 1) return true;
  FpPoly x = {0, 1};
  FpPoly xq = x;
  for (long i = 1; i <= f / 2; ++i) {
    xq = fp_powmod(xq, p, P, p);
    FpPoly d = xq;
    d.resize(std::max<size_t>(d.size(), 2), 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    fp_trim(d);
    FpPoly g = fp_gcd(P, d, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::shared_ptr<const UnramifiedField> UnramifiedField::with_poly(
    const PadicContext* ctx, std::vector<long> poly) {
  long p = ctx->p();
  if (poly.size() < 2 || poly.back() != 1)
    throw std::invalid_argument("defining polynomial must be monic");
  if (!fp_irreducible(poly, p))
    throw std::invalid_argument("defining polynomial is reducible mod p");
  auto F = std::shared_ptr<UnramifiedField>(new UnramifiedField());
  F->ctx_ = ctx;
  F->f_ = static_cast<int>(poly.size()) - 1;
  F->poly_ = std::move(poly);
  F->init_frobenius();
  return F;
}

std::shared_ptr<const UnramifiedField> UnramifiedField::create(
    const PadicContext* ctx, int f, std::uint64_t seed) {
  if (f < 1) throw std::invalid_argument("degree must be positive");
  if (f == 1) return trivial(ctx);
  long p = ctx->p();
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<long> P(f + 1);
    for (int i = 0; i < f; ++i) P[i] = static_cast<long>(rng() % p);
    P[f] = 1;
    if (P[0] == 0) continue;
    if (fp_irreducible(P, p)) return with_poly(ctx, P);
  }
  throw std::runtime_error("no irreducible polynomial found");
}

std::shared_ptr<const UnramifiedField> UnramifiedField::trivial(
    const PadicContext* ctx) {
  return with_poly(ctx, {0, 1});
}

void UnramifiedField::init_frobenius() {
  auto self = std::shared_ptr<const UnramifiedField>(
      std::shared_ptr<const UnramifiedField>{}, this);
  // The aliasing pointer above does not own; the field outlives this call.
  frob_.clear();
  if (f_ == 1) {
    frob_.push_back({Padic::exact(ctx_, 1)});
    return;
  }
  // identity table while the root is computed
  for (int i = 0; i < f_; ++i) {
    std::vector<Padic> c(f_, Padic::zero(ctx_));
    c[i] = Padic::exact(ctx_, 1);
    frob_.push_back(c);
  }
  UnramifiedElt x = UnramifiedElt::generator(self);
  UnramifiedElt r = newton_root(poly_, x.pow(ctx_->p()));
  std::vector<std::vector<Padic>> table;
  UnramifiedElt acc = UnramifiedElt::one(self);
  for (int i = 0; i < f_; ++i) {
    table.push_back(acc.coords());
    acc = acc * r;
  }
  frob_ = std::move(table);
}

UnramifiedElt UnramifiedElt::zero(const FieldPtr& F) {
  UnramifiedElt z;
  z.F_ = F;
  z.c_.assign(F->f(), Padic::zero(F->ctx()));
  return z;
}

UnramifiedElt UnramifiedElt::one(const FieldPtr& F) {
  UnramifiedElt z = zero(F);
  z.c_[0] = Padic::exact(F->ctx(), 1);
  return z;
}

UnramifiedElt UnramifiedElt::from_padic(const FieldPtr& F, const Padic& a) {
  UnramifiedElt z = zero(F);
  z.c_[0] = a;
  return z;
}

UnramifiedElt UnramifiedElt::generator(const FieldPtr& F) {
  std::vector<Padic> c(2, Padic::zero(F->ctx()));
  c[1] = Padic::exact(F->ctx(), 1);
  return from_poly(F, c);
}

UnramifiedElt UnramifiedElt::from_coords(const FieldPtr& F,
                                         std::vector<Padic> c) {
  if (static_cast<int>(c.size()) != F->f())
    throw std::invalid_argument("coordinate count must equal the degree");
  UnramifiedElt z;
  z.F_ = F;
  z.c_ = std::move(c);
  return z;
}

UnramifiedElt UnramifiedElt::from_poly(const FieldPtr& F,
                                       std::vector<Padic> c) {
  const auto& P = F->poly();
  long f = F->f();
  for (long d = static_cast<long>(c.size()) - 1; d >= f; --d) {
    if (c[d].is_exact_zero()) continue;
    Padic lead = c[d];
    for (long i = 0; i < f; ++i)
      if (P[i] != 0) c[d - f + i] -= lead * Padic::exact(F->ctx(), P[i]);
  }
  c.resize(f, Padic::zero(F->ctx()));
  return from_coords(F, std::move(c));
}

UnramifiedElt UnramifiedElt::from_residue(const FieldPtr& F,
                                          const std::vector<long>& r) {
  UnramifiedElt z = zero(F);
  for (int i = 0; i < F->f() && i < static_cast<int>(r.size()); ++i)
    z.c_[i] = Padic::from_int(F->ctx(), r[i]);
  return z;
}

UnramifiedElt UnramifiedElt::random_integer(const FieldPtr& F,
                                            std::mt19937_64& rng) {
  UnramifiedElt z = zero(F);
  for (auto& c : z.c_) c = Padic::random_integer(F->ctx(), rng);
  return z;
}

std::vector<long> UnramifiedElt::residue() const {
  std::vector<long> r;
  long p = ctx()->p();
  for (const auto& c : c_) {
    if (c.is_zero() || c.valuation() > 0) {
      r.push_back(0);
      continue;
    }
    if (c.valuation() < 0) throw std::domain_error("element is not integral");
    r.push_back(static_cast<long>(mpz_fdiv_ui(c.unit().get_mpz_t(), p)));
  }
  return r;
}

UnramifiedElt UnramifiedElt::operator-() const {
  UnramifiedElt z = *this;
  for (auto& c : z.c_) c = -c;
  return z;
}

UnramifiedElt operator+(const UnramifiedElt& a, const UnramifiedElt& b) {
  UnramifiedElt z = a;
  for (size_t i = 0; i < z.c_.size(); ++i) z.c_[i] += b.c_[i];
  return z;
}

UnramifiedElt operator-(const UnramifiedElt& a, const UnramifiedElt& b) {
  return a + (-b);
}

UnramifiedElt operator*(const UnramifiedElt& a, const Padic& b) {
  UnramifiedElt z = a;
  for (auto& c : z.c_) c = c * b;
  return z;
}

UnramifiedElt operator*(const UnramifiedElt& a, const UnramifiedElt& b) {
  long f = a.f();
  if (f == 1) return UnramifiedElt::from_coords(a.F_, {a.c_[0] * b.c_[0]});
  std::vector<Padic> prod(2 * f - 1, Padic::zero(a.ctx()));
  for (long i = 0; i < f; ++i) {
    if (a.c_[i].is_exact_zero()) continue;
    for (long j = 0; j < f; ++j) {
      if (b.c_[j].is_exact_zero()) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return UnramifiedElt::from_poly(a.F_, std::move(prod));
}

UnramifiedElt UnramifiedElt::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  UnramifiedElt acc = one(F_), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

UnramifiedElt UnramifiedElt::inverse() const {
  if (is_zero())
    throw PrecisionError("division by an element indistinguishable from 0");
  long v = val_lower();
  UnramifiedElt x = *this;
  for (auto& c : x.c_) c = c.shifted(-v);
  // Exact operands would never converge; work at the exact-inverse cap.
  x = x.capped(std::min(x.min_absprec(), 2 * ctx()->N() + 64));
  long q = ipow(ctx()->p(), f());
  UnramifiedElt z = x.pow(q - 2);
  UnramifiedElt two = from_padic(F_, Padic::exact(ctx(), 2));
  UnramifiedElt one_e = one(F_);
  for (int it = 0; it < 80; ++it) {
    if ((x * z - one_e).is_zero()) break;
    z = z * (two - x * z);
  }
  for (auto& c : z.c_) c = c.shifted(-v);
  return z;
}

UnramifiedElt UnramifiedElt::frobenius() const {
  const auto& T = F_->frob_table();
  UnramifiedElt z = zero(F_);
  for (int i = 0; i < f(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (int j = 0; j < f(); ++j) z.c_[j] += c_[i] * T[i][j];
  }
  return z;
}

UnramifiedElt UnramifiedElt::frobenius_power(int k) const {
  int f = this->f();
  k = ((k % f) + f) % f;
  UnramifiedElt z = *this;
  for (int i = 0; i < k; ++i) z = z.frobenius();
  return z;
}

Padic UnramifiedElt::trace() const {
  UnramifiedElt acc = *this, cur = *this;
  for (int i = 1; i < f(); ++i) {
    cur = cur.frobenius();
    acc = acc + cur;
  }
  return acc.c_[0];
}

Padic UnramifiedElt::norm() const {
  UnramifiedElt acc = *this, cur = *this;
  for (int i = 1; i < f(); ++i) {
    cur = cur.frobenius();
    acc = acc * cur;
  }
  return acc.c_[0];
}

bool UnramifiedElt::is_rational() const {
  for (int i = 1; i < f(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

bool UnramifiedElt::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool UnramifiedElt::is_exact_zero() const {
  for (const auto& c : c_)
    if (!c.is_exact_zero()) return false;
  return true;
}

UnramifiedElt UnramifiedElt::capped(long cap) const {
  UnramifiedElt z = *this;
  for (auto& c : z.c_) c = c.capped(cap);
  return z;
}

long UnramifiedElt::min_absprec() const {
  long m = kInfPrec;
  for (const auto& c : c_) m = std::min(m, c.absprec());
  return m;
}

long UnramifiedElt::val_lower() const {
  long m = kInfPrec;
  for (const auto& c : c_) m = std::min(m, c.valuation());
  return m;
}

UnramifiedElt teichmuller(const UnramifiedElt& x) {
  long q = ipow(x.ctx()->p(), x.f());
  // An exact operand would never stabilise; the lift only needs N digits.
  UnramifiedElt y = x.capped(std::min(x.min_absprec(), x.ctx()->N()));
  for (long it = 0; it < x.ctx()->N() + 4; ++it) {
    UnramifiedElt z = y.pow(q);
    if ((z - y).is_zero()) return z;
    y = z;
  }
  return y;
}

UnramifiedElt unr_log(const UnramifiedElt& u) {
  const PadicContext* ctx = u.ctx();
  UnramifiedElt z = u - UnramifiedElt::one(u.field());
  if (z.is_exact_zero()) return z;
  if (z.is_zero()) return z;
  long v = z.val_lower();
  long target = std::min(z.min_absprec(), v + ctx->N());
  if (v < 1) throw std::domain_error("logarithm expects a 1-unit");
  long K = 1;
  while (true) {
    bool ok = true;
    for (long k = K + 1; k <= K + 64 * static_cast<long>(ctx->p()); ++k)
      if (k * v - ctx->flog(k) < target) {
        ok = false;
        break;
      }
    if (ok) break;
    K *= 2;
  }
  UnramifiedElt sum = UnramifiedElt::zero(u.field());
  UnramifiedElt zk = z;
  for (long k = 1; k <= K; ++k) {
    UnramifiedElt term = zk * Padic::exact(ctx, k).inverse();
    sum = (k % 2 == 1) ? sum + term : sum - term;
    zk = zk * z;
  }
  return sum.capped(target);
}

UnramifiedElt unr_exp(const UnramifiedElt& y) {
  const PadicContext* ctx = y.ctx();
  UnramifiedElt one = UnramifiedElt::one(y.field());
  if (y.is_exact_zero()) return one;
  long target = std::min(y.min_absprec(), ctx->N());
  long v = y.val_lower();
  if (v < 1) throw std::domain_error("exponential needs v(y) >= 1");
  UnramifiedElt sum = one, term = one;
  long p = ctx->p();
  for (long k = 1;; ++k) {
    long lower = k * v - (k - 1) / (p - 1);
    if (lower >= target + 2) break;
    term = term * y * Padic::exact(ctx, k).inverse();
    sum = sum + term;
  }
  return sum.capped(target);
}

UnramifiedElt solve_frobenius_additive(const UnramifiedElt& x) {
  const FieldPtr& F = x.field();
  int f = F->f();
  if (f == 1) {
    if (!x.is_zero())
      throw FrobeniusObstruction("no solution at this level: trace obstruction");
    return UnramifiedElt::zero(F);
  }
  PMatrix A(f, std::vector<Padic>(f - 1, Padic::zero(x.ctx())));
  for (int j = 1; j < f; ++j) {
    std::vector<Padic> e(f, Padic::zero(x.ctx()));
    e[j] = Padic::exact(x.ctx(), 1);
    UnramifiedElt b = UnramifiedElt::from_coords(F, e);
    UnramifiedElt col = b - b.frobenius();
    for (int i = 0; i < f; ++i) A[i][j - 1] = col.coord(i);
  }
  auto sol = solve_consistent(A, x.coords());
  if (!sol)
    throw FrobeniusObstruction("no solution at this level: trace obstruction");
  std::vector<Padic> y(f, Padic::zero(x.ctx()));
  for (int j = 1; j < f; ++j) y[j] = (*sol)[j - 1];
  UnramifiedElt out = UnramifiedElt::from_coords(F, y);
  if (!((out - out.frobenius()) - x).is_zero())
    throw FrobeniusObstruction("no solution at this level: residual check");
  return out;
}

UnramifiedElt solve_frobenius_multiplicative(const UnramifiedElt& alpha) {
  const FieldPtr& F = alpha.field();
  const PadicContext* ctx = alpha.ctx();
  long p = ctx->p();
  int f = F->f();
  if (alpha.val_lower() != 0) throw std::domain_error("alpha must be a unit");
  long q = ipow(p, f);
  if (q > 2000000) throw std::runtime_error("residue field too large to search");
  FpPoly Pbar = F->poly();
  std::vector<long> abar = alpha.residue();
  FpPoly at = abar;
  fp_trim(at);
  std::vector<long> root;
  for (long idx = 1; idx < q && root.empty(); ++idx) {
    FpPoly r = residue_of_index(idx, p, f);
    FpPoly rr = fp_powmod(r, p - 1, Pbar, p);
    if (rr == at) root = r;
  }
  if (root.empty())
    throw FrobeniusObstruction(
        "no solution at this level: alpha is not a (p-1)-th power residue");
  UnramifiedElt u0 = teichmuller(UnramifiedElt::from_residue(F, root));
  UnramifiedElt beta = alpha * u0 * u0.frobenius().inverse();
  UnramifiedElt y = solve_frobenius_additive(-unr_log(beta));
  UnramifiedElt u = u0 * unr_exp(y);
  UnramifiedElt res = u.frobenius() - alpha * u;
  if (!res.is_zero() && res.val_lower() < ctx->N() - 1)
    throw FrobeniusObstruction("no solution at this level: residual check");
  return u;
}

UnramifiedEmbedding::UnramifiedEmbedding(FieldPtr small, FieldPtr big)
    : small_(std::move(small)), big_(std::move(big)) {
  if (big_->f() % small_->f() != 0)
    throw std::invalid_argument("degree of the small field must divide");
  long p = big_->ctx()->p();
  int F = big_->f();
  long q = ipow(p, F);
  const auto& Ps = small_->poly();
  FpPoly Pb = big_->poly();
  std::vector<long> found;
  for (long idx = 0; idx < q && found.empty(); ++idx) {
    FpPoly r = residue_of_index(idx, p, F);
    FpPoly acc;
    for (long i = static_cast<long>(Ps.size()) - 1; i >= 0; --i) {
      acc = fp_mulmod(acc, r, Pb, p);
      acc.resize(std::max<size_t>(acc.size(), 1), 0);
      acc[0] = ((acc[0] + Ps[i]) % p + p) % p;
      fp_trim(acc);
    }
    if (acc.empty()) found = r;
  }
  if (found.empty()) throw std::runtime_error("no root of the small modulus");
  root_ = newton_root(Ps, UnramifiedElt::from_residue(big_, found));
}

UnramifiedElt UnramifiedEmbedding::operator()(const UnramifiedElt& x) const {
  UnramifiedElt acc = UnramifiedElt::zero(big_);
  for (long i = static_cast<long>(x.coords().size()) - 1; i >= 0; --i)
    acc = acc * root_ + UnramifiedElt::from_padic(big_, x.coord(i));
  return acc;
}

}  // namespace iwk
