// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/crystalline.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace iwk {

UMatrix umat_identity(const FieldPtr& F, long n) {
  UMatrix m(n, std::vector<UnramifiedElt>(n, UnramifiedElt::zero(F)));
  for (long i = 0; i < n; ++i) m[i][i] = UnramifiedElt::one(F);
  return m;
}

UMatrix umat_mul(const UMatrix& a, const UMatrix& b) {
  long n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  UMatrix r(n, std::vector<UnramifiedElt>(m, a[0][0].zero_like()));
  for (long i = 0; i < n; ++i)
    for (long t = 0; t < k; ++t)
      for (long j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
  return r;
}

UMatrix umat_scale(const UMatrix& a, const UnramifiedElt& s) {
  UMatrix r = a;
  for (auto& row : r)
    for (auto& x : row) x = x * s;
  return r;
}

UMatrix umat_sub(const UMatrix& a, const UMatrix& b) {
  UMatrix r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

namespace {

// Row reduction with least-valuation pivots.  Returns the determinant and,
// when inv is non-null, the inverse.
UnramifiedElt eliminate(UMatrix a, UMatrix* inv) {
  long n = a.size();
  const FieldPtr& F = a[0][0].field();
  UMatrix b = umat_identity(F, n);
  UnramifiedElt det = UnramifiedElt::one(F);
  for (long col = 0; col < n; ++col) {
    long piv = -1, best = kInfPrec;
    for (long r = col; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      long v = a[r][col].val_lower();
      if (v < best) {
        best = v;
        piv = r;
      }
    }
    if (piv < 0) {
      if (inv) throw PrecisionError("singular matrix at working precision");
      return UnramifiedElt::zero(F);
    }
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
      det = -det;
    }
    UnramifiedElt pinv = a[col][col].inverse();
    det = det * a[col][col];
    for (long r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_exact_zero()) continue;
      if (!inv && r < col) continue;
      UnramifiedElt f = a[r][col] * pinv;
      for (long j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - f * a[col][j];
        b[r][j] = b[r][j] - f * b[col][j];
      }
    }
  }
  if (inv) {
    for (long r = 0; r < n; ++r) {
      UnramifiedElt d = a[r][r].inverse();
      for (long j = 0; j < n; ++j) b[r][j] = b[r][j] * d;
    }
    *inv = std::move(b);
  }
  return det;
}

}  // namespace

UnramifiedElt umat_det(const UMatrix& a) {
  if (a.empty()) throw std::invalid_argument("determinant of an empty matrix");
  return eliminate(a, nullptr);
}

UMatrix umat_inverse(const UMatrix& a) {
  UMatrix r;
  eliminate(a, &r);
  return r;
}

UnramifiedElt promote(const UnramifiedElt& x, const FieldPtr& F) {
  if (x.field() == F) return x;
  if (x.f() == 1) return UnramifiedElt::from_padic(F, x.coord(0));
  if (F->f() == 1 && x.is_rational()) return UnramifiedElt::from_padic(F, x.coord(0));
  throw std::invalid_argument("element does not lie in the target field");
}

// ---------------------------------------------------------------------------

CrysModule::CrysModule(FieldPtr F, UMatrix phi, std::vector<long> weights)
    : F_(std::move(F)), phi_(std::move(phi)), weights_(std::move(weights)) {
  period_ = UnramifiedElt::one(F_);
  long d = weights_.size();
  if (static_cast<long>(phi_.size()) != d)
    throw std::invalid_argument("phi matrix size does not match the weights");
  if (d == 0) return;
  for (auto& row : phi_) {
    if (static_cast<long>(row.size()) != d)
      throw std::invalid_argument("phi matrix must be square");
    for (auto& x : row) x = promote(x, F_);
  }
  UnramifiedElt det = umat_det(phi_);
  if (det.is_zero()) throw std::invalid_argument("phi is not invertible");
  if (det.val_lower() != -m())
    throw std::invalid_argument("v_p(det phi) must equal -m(V)");
}

CrysModule CrysModule::rank_one(const PadicContext* ctx, const Padic& phi, long weight) {
  FieldPtr F = UnramifiedField::trivial(ctx);
  return CrysModule(F, {{UnramifiedElt::from_padic(F, phi)}}, {weight});
}

CrysModule CrysModule::tate(const PadicContext* ctx, long r) {
  return rank_one(ctx, Padic::p_power(ctx, -r), r);
}

CrysModule CrysModule::random_admissible(const FieldPtr& F, std::mt19937_64& rng,
                                         const std::vector<long>& weights) {
  const PadicContext* ctx = F->ctx();
  long d = weights.size();
  if (d == 0) return CrysModule(F, {}, {});
  auto unit = [&]() {
    while (true) {
      UnramifiedElt u = UnramifiedElt::random_integer(F, rng);
      if (u.val_lower() == 0) return u;
    }
  };
  UMatrix L = umat_identity(F, d), U = umat_identity(F, d), D = umat_identity(F, d);
  for (long i = 0; i < d; ++i) {
    for (long j = 0; j < i; ++j) L[i][j] = UnramifiedElt::random_integer(F, rng);
    for (long j = i + 1; j < d; ++j) U[i][j] = UnramifiedElt::random_integer(F, rng);
    L[i][i] = unit();
    D[i][i] = unit() * UnramifiedElt::from_padic(F, Padic::p_power(ctx, -weights[i]));
  }
  return CrysModule(F, umat_mul(umat_mul(L, D), U), weights);
}

CrysModule CrysModule::direct_sum(const CrysModule& a, const CrysModule& b) {
  FieldPtr F = a.F_->f() >= b.F_->f() ? a.F_ : b.F_;
  long da = a.dim(), db = b.dim();
  UMatrix m(da + db, std::vector<UnramifiedElt>(da + db, UnramifiedElt::zero(F)));
  for (long i = 0; i < da; ++i)
    for (long j = 0; j < da; ++j) m[i][j] = promote(a.phi_[i][j], F);
  for (long i = 0; i < db; ++i)
    for (long j = 0; j < db; ++j) m[da + i][da + j] = promote(b.phi_[i][j], F);
  std::vector<long> w = a.weights_;
  w.insert(w.end(), b.weights_.begin(), b.weights_.end());
  CrysModule r(F, std::move(m), std::move(w));
  r.period_ = promote(a.period_, F) * promote(b.period_, F);
  return r;
}

std::map<long, long> CrysModule::fil_jumps() const {
  std::map<long, long> n;
  for (long w : weights_) ++n[w];
  return n;
}

long CrysModule::m() const {
  long s = 0;
  for (long w : weights_) s += w;
  return s;
}

CrysModule CrysModule::with_period(const UnramifiedElt& u) const {
  CrysModule r = *this;
  r.period_ = promote(u, F_);
  return r;
}

const UnramifiedElt& CrysModule::phi_scalar() const {
  if (dim() != 1) throw std::invalid_argument("phi scalar needs a rank-one module");
  return phi_[0][0];
}

// ---------------------------------------------------------------------------

mpq_class gamma_star(long r) {
  mpz_class f = 1;
  if (r > 0) {
    for (long k = 2; k <= r - 1; ++k) f *= k;
    return mpq_class(f);
  }
  for (long k = 2; k <= -r; ++k) f *= k;
  mpq_class q(((-r) % 2) ? -1 : 1, 1);
  q /= f;
  return q;
}

mpq_class gamma_factor(const std::vector<long>& weights) {
  mpq_class r = 1;
  for (long w : weights) r /= gamma_star(w);
  return r;
}

EulerOperators euler_operators(const CrysModule& M, long j) {
  const FieldPtr& F = M.field();
  const PadicContext* ctx = M.ctx();
  long d = M.dim();
  if (d == 0) throw std::invalid_argument("Euler operators of the zero module");
  EulerOperators e;
  UMatrix I = umat_identity(F, d);
  UnramifiedElt pj = UnramifiedElt::from_padic(F, Padic::p_power(ctx, j));
  UnramifiedElt pm = UnramifiedElt::from_padic(F, Padic::p_power(ctx, -1 - j));
  e.one_minus_phi = umat_sub(I, umat_scale(M.phi(), pj));
  e.one_minus_pinv_phi = umat_sub(I, umat_scale(umat_inverse(M.phi()), pm));
  e.det_one = umat_det(e.one_minus_phi);
  e.det_pinv = umat_det(e.one_minus_pinv_phi);
  e.bad_one = e.det_one.is_zero();
  e.bad_pinv = e.det_pinv.is_zero();
  return e;
}

TwistedModule unramified_twist(const CrysModule& M, const DeRhamChar& eta) {
  const PadicContext* ctx = M.ctx();
  if (eta.wild_level != 0 || eta.tame_mod(ctx->p()) != 0)
    throw std::invalid_argument("unramified twist needs trivial tame and wild parts");
  FieldPtr F = M.field();
  if (eta.unram && eta.unram->f() > F->f()) F = eta.unram->field();
  UnramifiedElt alpha = eta.unram ? promote(*eta.unram, F) : UnramifiedElt::one(F);
  UMatrix phi = M.phi();
  for (auto& row : phi)
    for (auto& x : row) x = promote(x, F);
  UnramifiedElt s = alpha.inverse() * UnramifiedElt::from_padic(F, Padic::p_power(ctx, -eta.j));
  phi = umat_scale(phi, s);
  std::vector<long> w = M.weights();
  for (auto& x : w) x += eta.j;
  UnramifiedElt u = UnramifiedElt::one(F);
  bool trivial_alpha = (alpha - UnramifiedElt::one(F)).is_zero();
  if (!trivial_alpha) {
    try {
      u = solve_frobenius_multiplicative(alpha);
    } catch (const FrobeniusObstruction& e) {
      throw FrobeniusObstruction(std::string("period not in working unramified field: ") +
                                 e.what());
    }
  }
  CrysModule out(F, std::move(phi), std::move(w));
  out = out.with_period(promote(M.period(), F) * u);
  return TwistedModule{out, u};
}

FactorialsResult factorials_check(const IwCtx& c, const std::vector<long>& weights,
                                  long j) {
  const PadicContext* ctx = c->ctx();
  long d = weights.size();
  long sum = 0, r = 0;
  std::vector<long> w;
  for (long n : weights) {
    sum += n;
    if (n > j) ++r;
    w.push_back(n - j);
  }
  FractionElt ell = ell_of_rep(c, weights);
  LeadingTerm lt = leading_term(ell, DeRhamChar::chi_power(j), d + 2);
  mpq_class gs = gamma_star(1 + j);
  mpq_class num = 1;
  for (long i = 0; i < d; ++i) num *= gs;
  FactorialsResult out;
  out.order = lt.order;
  out.lhs = Padic::from_rational(ctx, num) / lt.taylor.to_padic();
  long e = sum + j * d + r;
  out.rhs = gamma_factor(w);
  if (e % 2) out.rhs = -out.rhs;
  Padic rhs = Padic::from_rational(ctx, out.rhs);
  Padic diff = out.lhs - rhs;
  long vr = rhs.valuation();
  out.agreement = (diff.is_zero() ? diff.absprec() : diff.valuation()) - vr;
  out.equal = out.agreement >= ctx->N() - 8;
  return out;
}

}  // namespace iwk
