// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/regulator.hpp"

#include <stdexcept>
#include <utility>

namespace iwk {

ColemanSeries::ColemanSeries(PSeries s) : g(std::move(s)) {
  if (g[0].val_lower() != 0 || !g[0].is_unit())
    throw std::domain_error("non-unit constant term");
}

ColemanSeries coleman_gc(const PadicContext* ctx, long c) {
  if (c < 2) throw std::invalid_argument("coleman_gc needs c >= 2");
  if (c % ctx->p() == 0) throw std::invalid_argument("c must be prime to p");
  std::vector<Padic> co;
  for (long m = 1; m <= c; ++m) co.push_back(Padic::exact(ctx, binom(c, m)));
  return ColemanSeries(PSeries(std::move(co)));
}

PSeries dlog(const ColemanSeries& g, long deg) {
  PSeries inv = series_inverse(g.g, deg);
  return PSeries::mul(deriv(g.g), inv, deg).truncate(deg);
}

NormCheck check_norm_compatible(ColemanSeries& g, long deg) {
  NormCheck out;
  if (!g.g.is_exact_poly())
    throw std::invalid_argument("norm check needs an exact polynomial");
  const PadicContext* ctx = g.g.ctx();
  long p = ctx->p();
  std::vector<Padic> b = to_x_basis(g.g);
  using CSeries = TruncSeries<CycloElt>;
  CSeries prod = CSeries::one(CycloElt::one(ctx, 1));
  for (long a = 0; a < p; ++a) {
    std::vector<CycloElt> bx;
    for (long i = 0; i < static_cast<long>(b.size()); ++i)
      bx.push_back(CycloElt::zeta_power(ctx, 1, a * i) * b[i]);
    prod = prod * from_x_basis(bx);
  }
  PSeries target = phi(g.g);
  bool ok = prod.deg() == target.deg();
  for (long m = 0; ok && m <= prod.deg(); ++m) {
    if (!prod[m].lies_in_level(0)) {
      ok = false;
      break;
    }
    ok = (prod[m].to_padic() - target[m]).is_zero();
  }
  out.norm_compatible = ok;
  g.norm_compatible = ok;
  if (ok) {
    PSeries y = dlog(g, deg);
    PSeries py = psi(y);
    out.psi_fixed = agree(py, y, py.deg());
  }
  return out;
}

// ---------------------------------------------------------------------------

RegulatorOutput regulator(const PSeries& Y, const Padic& lambda, int level,
                          std::string tag, long t_shift) {
  PSeries py = psi(Y);
  if (!agree(py, Y * lambda, py.deg())) throw std::domain_error("not psi-fixed");
  RegulatorOutput r;
  r.series = Y - phi(Y) * lambda;
  r.phi_scalar = lambda;
  r.t_shift = t_shift;
  r.level = level;
  r.tag = std::move(tag);
  return r;
}

RegulatorOutput cyclo_regulator(const PSeries& y, int level, std::string tag) {
  return regulator(y, Padic::exact(y.ctx(), 1), level, std::move(tag));
}

RegulatorOutput twisted_regulator(const PSeries& y, long r, int level) {
  if (r < 0) throw std::invalid_argument("twist exponent must be >= 0");
  const PadicContext* ctx = y.ctx();
  long deg = y.is_exact_poly() ? y.deg() + r : y.deg();
  PSeries t = t_series(Padic::exact(ctx, 1), deg);
  PSeries Y = y;
  for (long i = 0; i < r; ++i) Y = PSeries::mul(t, Y, deg);
  return regulator(Y, Padic::p_power(ctx, -r), level,
                   "t^-" + std::to_string(r) + " e_" + std::to_string(r), r);
}

IwasawaElt regulator_measure(const IwCtx& c, const RegulatorOutput& r) {
  return mellin_inverse(c, r.series, r.level);
}

CycloElt regulator_value(const IwCtx& c, const RegulatorOutput& r, const DeRhamChar& eta) {
  return evaluate_measure_series(c, r.series, eta);
}

PSeries solve_one_minus_lambda_phi(const PSeries& x, const Padic& lambda, long deg) {
  const PadicContext* ctx = x.ctx();
  Padic one = Padic::exact(ctx, 1);
  if ((lambda - one).is_zero() && lambda.is_exact()) return solve_one_minus_phi(x, deg);
  if (lambda.valuation() < 0)
    throw std::invalid_argument("phi scalar with negative valuation is unsupported");
  Padic den = one - lambda;
  if (den.is_zero()) return solve_one_minus_phi(x, deg);
  std::vector<Padic> c0 = x.fit(deg).truncate(deg).coeffs();
  Padic y0 = c0[0] / den;
  c0[0] = Padic::zero(ctx);
  PSeries term(c0, x.fit(deg).truncate(deg).tail());
  long target = std::min(term.absprec_upto(deg),
                         saturating_add(term.low_from(0), ctx->N()));
  term = term.capped(target);
  PSeries y = term;
  long cap = 4 * ctx->N() + 16;
  for (long pass = 0; pass < cap; ++pass) {
    term = (phi(term) * lambda).truncate(deg).capped(target);
    if (term.is_zero()) return y + PSeries::constant(y0);
    y = y + term;
  }
  throw PrecisionError("nonconvergent: (1-phi) pass cap reached");
}

PSeries big_exponential(const PSeries& ztilde, const Padic& lambda, long h, long deg) {
  const PadicContext* ctx = ztilde.ctx();
  if (h < 1) throw std::invalid_argument("big exponential needs h >= 1");
  Padic one = Padic::exact(ctx, 1);
  for (long k = 0; k <= h; ++k) {
    if (!(Padic::p_power(ctx, k) * lambda - one).is_zero()) continue;
    if (!moment(ztilde, k).is_zero())
      throw std::domain_error("Delta obstruction nonzero at k=" + std::to_string(k));
  }
  if (ztilde.order() >= kInfPrec && ztilde.is_exact_poly()) return ztilde;
  PSeries y = solve_one_minus_lambda_phi(ztilde, lambda, deg);
  for (long i = 0; i < h; ++i) y = ell_apply(i, y);
  return y;
}

PSeries deriv_inverse(const PSeries& f) {
  if (!f.is_exact_poly())
    throw std::invalid_argument("deriv_inverse needs an exact polynomial");
  const PadicContext* ctx = f.ctx();
  long p = ctx->p();
  std::vector<Padic> b = to_x_basis(f);
  for (long i = 0; i < static_cast<long>(b.size()); ++i) {
    if (i % p == 0) {
      if (!b[i].is_zero()) throw std::domain_error("not in psi=0 kernel");
      b[i] = Padic::zero(ctx);
      continue;
    }
    b[i] = b[i] / Padic::exact(ctx, i);
  }
  return from_x_basis(b);
}

PSeries deriv_inverse_measure(const IwasawaElt& lam, long deg) {
  return mellin(lam.twist(-1), deg);
}

// ---------------------------------------------------------------------------

namespace {

// Splits x = p^v u into (v, u).
std::pair<long, UnramifiedElt> split_unit(const UnramifiedElt& x) {
  long v = x.val_lower();
  UnramifiedElt u = x * UnramifiedElt::from_padic(x.field(), Padic::p_power(x.ctx(), -v));
  return {v, u};
}

}  // namespace

Prefactor interpolation_prefactor(const IwCtx& c, const CrysModule& M,
                                  const DeRhamChar& eta) {
  const PadicContext* ctx = c->ctx();
  if (M.dim() != 1) throw std::invalid_argument("prefactor needs a rank-one module");
  FieldPtr F = M.field();
  if (eta.unram && eta.unram->f() > F->f()) F = eta.unram->field();
  UnramifiedElt lam = promote(M.phi_scalar(), F);
  if (eta.unram) lam = lam * promote(*eta.unram, F).inverse();

  Prefactor out;
  long n = eta.conductor(c->p());
  out.conductor = static_cast<int>(n);
  out.gamma = gamma_star(1 + eta.j);
  DeRhamChar fin = eta;
  fin.unram.reset();
  out.scalar = eps_de_rham_char(c, fin.inverse(), -1);
  out.scalar.cyclo = out.scalar.cyclo * Padic::from_rational(ctx, out.gamma);
  if (n >= 1) {
    auto [v, u] = split_unit(lam);
    EpsFactor f = EpsFactor::one(ctx);
    f.p_power = n * v;
    f.unram = u.pow(n);
    out.scalar = out.scalar * f;
    return out;
  }
  UnramifiedElt one = UnramifiedElt::one(F);
  UnramifiedElt pj = UnramifiedElt::from_padic(F, Padic::p_power(ctx, eta.j));
  UnramifiedElt pm = UnramifiedElt::from_padic(F, Padic::p_power(ctx, -1 - eta.j));
  out.euler_num = one - pj * lam;
  out.euler_den = one - pm * lam.inverse();
  out.bad_one = out.euler_num->is_zero();
  out.bad_pinv = out.euler_den->is_zero();
  if (!out.bad_one && !out.bad_pinv) out.ratio = *out.euler_num * out.euler_den->inverse();
  return out;
}

IwasawaElt eps_sign_element(const IwCtx& c, long d, long m) {
  IwasawaElt g = -IwasawaElt::gamma_minus_one(c);
  IwasawaElt r = IwasawaElt::one(c);
  for (long i = 0; i < d; ++i) r = r * g;
  if (m % 2) r = -r;
  return r;
}

bool sign_twist_check(const IwCtx& c, long d, long m, long j) {
  return agree(eps_sign_element(c, d, m).twist(-j), eps_sign_element(c, d, m + j * d), -1);
}

ThetaScalar theta_and_eps_scalar(const IwCtx& c, const CrysModule& M,
                                 const RegulatorOutput& reg) {
  if (M.dim() != 1) throw std::invalid_argument("theta needs a rank-one module");
  FractionElt ell = ell_of_rep(c, M.weights());
  FractionElt theta = FractionElt(regulator_measure(c, reg)) * ell.inverse();
  if (!theta.denominator_ok()) throw std::domain_error("zero-divisor denominator");
  return ThetaScalar{theta, eps_sign_element(c, M.dim(), M.m()), eps_dr_scalar(M)};
}

}  // namespace iwk
