// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/suite.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

#include "iwk/bernoulli.hpp"
#include "iwk/crystalline.hpp"
#include "iwk/epsilon.hpp"
#include "iwk/iwasawa.hpp"
#include "iwk/regulator.hpp"

namespace iwk {

namespace {

// Collects many trials into one check; keeps the first failure for display.
class Agg {
 public:
  Agg(std::string id, std::string anchor, long cap) : cap_(cap) {
    r_.id = std::move(id);
    r_.paper_anchor = std::move(anchor);
    r_.pass = true;
    r_.precision_attained = kInfPrec;
  }

  template <class F>
  void add(bool ok, long prec, F&& show) {
    r_.precision_attained = std::min(r_.precision_attained, prec);
    if (!shown_ || (!ok && r_.pass)) {
      auto [l, r] = show();
      r_.lhs = std::move(l);
      r_.rhs = std::move(r);
      shown_ = true;
    }
    if (!ok) r_.pass = false;
  }

  void error(const std::exception& e) {
    if (r_.pass || !shown_) {
      r_.lhs = Json{{"error", e.what()}};
      r_.rhs = nullptr;
      shown_ = true;
    }
    r_.pass = false;
    r_.precision_attained = std::min(r_.precision_attained, 0L);
  }

  CheckResult done() {
    if (r_.precision_attained > cap_) r_.precision_attained = cap_;
    if (!shown_) {
      r_.lhs = nullptr;
      r_.rhs = nullptr;
    }
    return r_;
  }

 private:
  CheckResult r_;
  long cap_;
  bool shown_ = false;
};

long agreement_digits(const Padic& d) { return d.is_zero() ? d.absprec() : d.valuation(); }

long cyclo_digits(const CycloElt& d) {
  return d.is_zero() ? d.min_absprec() : d.val_lower();
}

PSeries random_poly(const PadicContext* ctx, std::mt19937_64& rng, long deg) {
  std::vector<Padic> c;
  for (long i = 0; i <= deg; ++i) c.push_back(Padic::random_integer(ctx, rng));
  return PSeries(std::move(c));
}

long vp_factorial(long p, long n) {
  long s = 0;
  for (long q = p; q <= n; q *= p) s += n / q;
  return s;
}

struct Env {
  const PadicContext* ctx;
  IwCtx c;
  std::mt19937_64 rng;
  Env(const RunConfig& cfg, std::uint64_t salt)
      : ctx(PadicContext::get(cfg.p, cfg.N)),
        c(IwasawaContext::create(ctx, cfg.DT)),
        rng(cfg.seed * 0x9E3779B97F4A7C15ULL + salt) {}
};

std::string tag(const char* base, long v) { return std::string(base) + std::to_string(v); }

}  // namespace

long series_agreement(const PSeries& a, const PSeries& b, long d) {
  long m = kInfPrec;
  for (long i = 0; i <= d; ++i) m = std::min(m, agreement_digits(a.coeff(i) - b.coeff(i)));
  return m;
}

long relative_agreement(const CycloElt& a, const CycloElt& b) {
  CycloElt d = a - b;
  long vb = b.is_zero() ? 0 : b.val_lower();
  return cyclo_digits(d) - vb;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> suite_kubota_leopoldt(const RunConfig& cfg, const KlParams& kp) {
  Env e(cfg, 1);
  long need = kp.min_digits >= 0 ? kp.min_digits : cfg.N - 5;
  KlTarget target = kp.target ? kp.target : KlTarget(kubota_leopoldt_target);
  std::vector<CheckResult> out;
  PSeries y = dlog(coleman_gc(e.ctx, kp.c), cfg.D);
  RegulatorOutput reg = cyclo_regulator(y, cfg.level);
  for (long j = 1; j <= kp.jmax; ++j) {
    Agg a("kl.p" + std::to_string(cfg.p) + ".c" + std::to_string(kp.c) + ".j" + std::to_string(j),
          "Coleman pipeline: (1-p^j)(c^{j+1}-1)B_{j+1}/(j+1)", cfg.N);
    try {
      Padic v = regulator_value(e.c, reg, DeRhamChar::chi_power(j)).to_padic();
      mpq_class t = target(cfg.p, kp.c, j);
      Padic tp = Padic::from_rational(e.ctx, t);
      long dig = agreement_digits(v - tp);
      a.add(dig >= need, dig, [&] {
        return std::pair{padic_json(v), Json{{"rational", t.get_str()}, {"padic", padic_json(tp)}}};
      });
    } catch (const std::exception& ex) {
      a.error(ex);
    }
    out.push_back(a.done());
  }
  return out;
}

std::vector<CheckResult> suite_identities(const RunConfig& cfg, const IdentityParams& ip) {
  Env e(cfg, 2);
  const IwCtx& c = e.c;
  long D = cfg.D;
  std::vector<CheckResult> out;

  {
    Agg a("iota_ell", "iota(ell_j) = -ell_{-j}", cfg.N);
    try {
      for (long j = -4; j <= 4; ++j) {
        IwasawaElt l = IwasawaElt::ell(c, j).involution(), r = -IwasawaElt::ell(c, -j);
        a.add(agree(l, r, -1), cfg.N, [&] {
          return std::pair{series_json(l.comp(0)), series_json(r.comp(0))};
        });
      }
      std::uniform_int_distribution<long> jd(-4, 4);
      for (int t = 0; t < ip.trials; ++t) {
        long j = jd(e.rng);
        IwasawaElt lam = IwasawaElt::random(c, e.rng, 6);
        IwasawaElt l = (IwasawaElt::ell(c, j) * lam).involution();
        IwasawaElt r = -IwasawaElt::ell(c, -j) * lam.involution();
        a.add(agree(l, r, -1), cfg.N, [&] {
          return std::pair{series_json(l.comp(0)), series_json(r.comp(0))};
        });
      }
    } catch (const std::exception& ex) {
      a.error(ex);
    }
    out.push_back(a.done());
  }

  {
    Agg a("mu_recursion", "mu_{n+1} = ell_0 Tw_{chi^{-1}}(mu_n)", cfg.N);
    try {
      for (long n = -3; n <= 3; ++n) {
        FractionElt l = mu_element(c, n + 1);
        FractionElt r = FractionElt(IwasawaElt::ell(c, 0)) * mu_element(c, n).twist(-1);
        a.add(l.equals(r), cfg.N, [&] {
          return std::pair{Json{{"n", n + 1}}, Json{{"ell0_tw_mu", n}}};
        });
      }
    } catch (const std::exception& ex) {
      a.error(ex);
    }
    out.push_back(a.done());
  }

  {
    Agg a("ell_rep_iota", "ell(V) iota(ell(V*(1))) = (-1)^{sum n_i + d} ell_0^d", cfg.N);
    Agg lit("ell_rep_iota_even_d", "ell(V) iota(ell(V*(1))) = (-1)^{sum n_i} ell_0^d, even d",
            cfg.N);
    std::uniform_int_distribution<long> dd(1, 4), wd(-3, 4);
    try {
      for (int t = 0; t < ip.multisets; ++t) {
        long d = dd(e.rng);
        std::vector<long> w, wd1;
        long s = 0;
        for (long i = 0; i < d; ++i) {
          long n = wd(e.rng);
          w.push_back(n);
          wd1.push_back(1 - n);
          s += n;
        }
        FractionElt lhs = ell_of_rep(c, w) * ell_of_rep(c, wd1).involution();
        FractionElt l0 = FractionElt::one(c);
        for (long i = 0; i < d; ++i) l0 = l0 * FractionElt(IwasawaElt::ell(c, 0));
        FractionElt corrected = ((s + d) % 2) ? l0.negated() : l0;
        FractionElt literal = (s % 2) ? l0.negated() : l0;
        Json wj = w;
        a.add(lhs.equals(corrected), cfg.N, [&] {
          return std::pair{Json{{"weights", wj}}, Json{{"sign_exponent", s + d}}};
        });
        if (d % 2 == 0)
          lit.add(lhs.equals(literal), cfg.N, [&] {
            return std::pair{Json{{"weights", wj}}, Json{{"sign_exponent", s}}};
          });
      }
    } catch (const std::exception& ex) {
      a.error(ex);
    }
    out.push_back(a.done());
    out.push_back(lit.done());
  }

  Agg mt("mellin_twist", "M o Tw_chi = d o M", cfg.N);
  Agg ml("mellin_ell0", "M(ell_0 lambda) = t d M(lambda)", cfg.N);
  for (int t = 0; t < ip.trials; ++t) {
    IwasawaElt lam = IwasawaElt::random(c, e.rng, 6);
    try {
      PSeries f = mellin(lam, D);
      PSeries l = mellin(lam.twist(1), D), r = deriv(f);
      long dg = std::min(l.deg(), r.deg());
      mt.add(agree(l, r, dg), series_agreement(l, r, dg),
             [&] { return std::pair{series_json(l), series_json(r)}; });
      PSeries l2 = mellin(IwasawaElt::ell(c, 0) * lam, D), r2 = ell_apply(0, f);
      long dg2 = std::min(l2.deg(), r2.deg());
      ml.add(agree(l2, r2, dg2), series_agreement(l2, r2, dg2),
             [&] { return std::pair{series_json(l2), series_json(r2)}; });
    } catch (const std::exception& ex) {
      mt.error(ex);
      ml.error(ex);
    }
  }
  out.push_back(mt.done());
  out.push_back(ml.done());

  Agg pp("psi_phi", "psi o phi = id", cfg.N);
  Agg pr("projection", "psi(f phi(g)) = psi(f) g", cfg.N);
  long gdeg = std::max(1L, D / static_cast<long>(cfg.p));
  for (int t = 0; t < ip.trials; ++t) {
    try {
      PSeries f = random_poly(e.ctx, e.rng, D);
      PSeries back = psi(phi(f));
      pp.add(agree(back, f, D), series_agreement(back, f, D),
             [&] { return std::pair{series_json(back), series_json(f)}; });
      PSeries g = random_poly(e.ctx, e.rng, gdeg);
      PSeries l = psi(f * phi(g)), r = psi(f) * g;
      long dg = std::max(l.deg(), r.deg());
      pr.add(agree(l, r, dg), series_agreement(l, r, dg),
             [&] { return std::pair{series_json(l), series_json(r)}; });
    } catch (const std::exception& ex) {
      pp.error(ex);
      pr.error(ex);
    }
  }
  out.push_back(pp.done());
  out.push_back(pr.done());
  return out;
}

std::vector<CheckResult> suite_factorials(const RunConfig& cfg, int trials, long slack) {
  Env e(cfg, 3);
  Agg a("factorials", "Gamma*(1+j)^d / ell(V)*(chi^j) = (-1)^{sum n_i + jd + r} Gamma(W)", cfg.N);
  std::uniform_int_distribution<long> dd(1, 5), wd(-5, 8), jd(-6, 9);
  for (int t = 0; t < trials; ++t) {
    long d = dd(e.rng), j = jd(e.rng);
    std::vector<long> w;
    for (long i = 0; i < d; ++i) w.push_back(wd(e.rng));
    try {
      FactorialsResult r = factorials_check(e.c, w, j);
      bool ok = r.agreement >= cfg.N - slack;
      a.add(ok, r.agreement, [&] {
        return std::pair{Json{{"weights", w}, {"j", j}, {"value", padic_json(r.lhs)}},
                         Json{{"rational", r.rhs.get_str()}}};
      });
    } catch (const std::exception& ex) {
      a.error(ex);
    }
  }
  return {a.done()};
}

std::vector<CheckResult> suite_gauss(const RunConfig& cfg) {
  Env e(cfg, 4);
  long p = cfg.p;
  Agg norm("gauss.norm", "tau(eta) tau(eta^{-1}) = eta(-1) p^n", cfg.N);
  Agg xi("gauss.xi_change", "tau(eta_0, xi^c) = eta_0(c) tau(eta_0, xi)", cfg.N);
  std::vector<DeRhamChar> chars;
  for (long t = 1; t < p - 1; ++t) chars.push_back(DeRhamChar{0, t, 0, 0, {}});
  for (long t = 0; t < p - 1; ++t)
    for (long w = 1; w < p; ++w) chars.push_back(DeRhamChar{0, t, 1, w, {}});
  for (const auto& eta : chars) {
    try {
      long n = eta.conductor(p);
      CycloElt prod = gauss_sum_power(e.c, eta, 1) * gauss_sum_power(e.c, eta.inverse(), 1);
      CycloElt rhs = CycloElt::from_padic(
          Padic::exact(e.ctx, eta.sign_at_minus_one() * ipow(p, n)), prod.level());
      norm.add((prod - rhs).is_zero(), cyclo_digits(prod - rhs), [&] {
        return std::pair{cyclo_json(prod), cyclo_json(rhs)};
      });
      for (long cc : {2L, p + 1}) {
        XiChange x = xi_change_check(e.c, eta, cc);
        xi.add(x.equal, cyclo_digits(x.lhs - x.rhs),
               [&] { return std::pair{cyclo_json(x.lhs), cyclo_json(x.rhs)}; });
      }
    } catch (const std::exception& ex) {
      norm.error(ex);
    }
  }
  return {norm.done(), xi.done()};
}

std::vector<CheckResult> suite_fudge(const RunConfig& cfg, long hmax, long slack) {
  Env e(cfg, 5);
  Agg a("fudge", "A_{h,eta}(eta) closed form", cfg.N);
  for (long h = 1; h <= hmax; ++h)
    for (long j = 0; j < h; ++j)
      for (long t = 0; t < static_cast<long>(cfg.p) - 1; ++t) {
        DeRhamChar eta{j, t, 0, 0, {}};
        try {
          CycloElt l = fudge_factor(e.c, h, eta), r = fudge_closed_form(e.c, h, eta);
          long dig = relative_agreement(l, r);
          a.add(dig >= cfg.N - slack, dig, [&] {
            return std::pair{Json{{"h", h}, {"j", j}, {"tame", t}, {"value", cyclo_json(l)}},
                             cyclo_json(r)};
          });
        } catch (const std::exception& ex) {
          a.error(ex);
        }
      }
  return {a.done()};
}

std::vector<CheckResult> suite_omega(const RunConfig& cfg, int trials, long hmax) {
  Env e(cfg, 6);
  long D = cfg.D;
  std::vector<long> cs;
  for (long c = 2; cs.size() < 3; ++c)
    if (c % cfg.p != 0) cs.push_back(c);
  std::vector<PSeries> dl;
  for (long c : cs) dl.push_back(dlog(coleman_gc(e.ctx, c), D));
  std::vector<Agg> aggs;
  for (long h = 1; h <= hmax; ++h)
    aggs.emplace_back(tag("omega_L.h", h), "Omega_{V,h}(L(y)) = ell_{h-1}...ell_0 y", cfg.N);
  std::uniform_int_distribution<long> ad(-3, 3);
  Padic one = Padic::exact(e.ctx, 1);
  for (int t = 0; t < trials; ++t) {
    PSeries y = PSeries::constant(Padic::random_integer(e.ctx, e.rng));
    for (const auto& s : dl) y = y + s * Padic::exact(e.ctx, ad(e.rng));
    try {
      RegulatorOutput reg = cyclo_regulator(y, cfg.level);
      PSeries rhs = y;
      for (long h = 1; h <= hmax; ++h) {
        rhs = ell_apply(h - 1, rhs);
        PSeries lhs = big_exponential(reg.series, one, h, D);
        long dg = D - h;
        aggs[h - 1].add(agree(lhs, rhs, dg), series_agreement(lhs, rhs, dg),
                        [&] { return std::pair{series_json(lhs), series_json(rhs)}; });
      }
    } catch (const std::exception& ex) {
      for (auto& a : aggs) a.error(ex);
    }
  }
  std::vector<CheckResult> out;
  for (auto& a : aggs) out.push_back(a.done());
  return out;
}

std::vector<CheckResult> suite_derivative(const RunConfig& cfg, int trials) {
  Env e(cfg, 7);
  const IwCtx& c = e.c;
  long p = cfg.p;
  Agg law("derivative_law", "L(x)'(eta) = g(eta) eta(gamma) log chi(gamma)", cfg.N);
  Agg fd("finite_difference", "mu(eta <chi>^{p^k}) - mu(eta) - p^k mu'(eta)", cfg.N);
  std::uniform_int_distribution<long> jd(-2, 3), td(0, p - 2), wd(0, 1), ed(1, p - 1);
  for (int t = 0; t < trials; ++t) {
    IwasawaElt g = IwasawaElt::random(c, e.rng, 6);
    int w = static_cast<int>(wd(e.rng));
    DeRhamChar eta{jd(e.rng), td(e.rng), w, w ? ed(e.rng) : 0, {}};
    try {
      CycloElt z = char_at_gamma1(c, eta);
      IwasawaCycloElt x = IwasawaCycloElt(g, w) *
                          (IwasawaCycloElt(IwasawaElt::gamma1(c), w) - IwasawaCycloElt::scalar(c, z));
      CycloElt l = x.derivative_at(eta);
      CycloElt r = evaluate_char(g, eta) * z * c->log_u();
      law.add((l - r).is_zero(), cyclo_digits(l - r),
              [&] { return std::pair{cyclo_json(l), cyclo_json(r)}; });

      CycloElt g0 = evaluate_char(g, eta), g1 = derivative_at(g, eta);
      for (long k = 3; k <= 6; ++k) {
        long s = ipow(p, k);
        CycloElt diff = evaluate_char(g, eta.times_angle(s)) - g0 - g1 * Padic::exact(e.ctx, s);
        long bound = kInfPrec;
        for (long rr = 2; rr <= 64; ++rr) bound = std::min(bound, rr * k + rr - vp_factorial(p, rr));
        long v = cyclo_digits(diff);
        bool ok = diff.is_zero() || v >= bound;
        fd.add(ok, std::min(v, bound), [&] {
          return std::pair{Json{{"k", k}, {"valuation", v}}, Json{{"predicted", bound}}};
        });
      }
    } catch (const std::exception& ex) {
      law.error(ex);
    }
  }
  return {law.done(), fd.done()};
}

std::vector<CheckResult> suite_crystalline(const RunConfig& cfg, int trials) {
  Env e(cfg, 8);
  FieldPtr F1 = UnramifiedField::trivial(e.ctx);
  FieldPtr F2 = UnramifiedField::create(e.ctx, 2, cfg.seed);
  Agg det("det_phi_valuation", "v_p(det phi) = -m(V)", cfg.N);
  Agg tw("twist_m", "m(V(eta)) = m(V) + jd", cfg.N);
  Agg per("twist_period", "sigma(u) = alpha u", cfg.N);
  Agg sg("eps_sign_twist", "Tw_{eta^{-1}} sign = (-1)^{jd} sign", cfg.N);
  std::uniform_int_distribution<long> dd(1, 4), wd(-3, 5), jd(-3, 3), fd(1, 2);
  for (int t = 0; t < trials; ++t) {
    long d = dd(e.rng), j = jd(e.rng);
    FieldPtr F = fd(e.rng) == 2 ? F2 : F1;
    std::vector<long> w;
    for (long i = 0; i < d; ++i) w.push_back(wd(e.rng));
    try {
      CrysModule M = CrysModule::random_admissible(F, e.rng, w);
      long v = umat_det(M.phi()).val_lower();
      det.add(v == -M.m(), cfg.N,
              [&] { return std::pair{Json{{"v_det", v}}, Json{{"minus_m", -M.m()}}}; });
      DeRhamChar eta = DeRhamChar::chi_power(j);
      if (F->f() > 1) {
        UnramifiedElt u0;
        do {
          u0 = UnramifiedElt::random_integer(F, e.rng);
        } while (u0.val_lower() != 0);
        eta.unram = u0.frobenius() * u0.inverse();
      }
      TwistedModule T = unramified_twist(M, eta);
      long m2 = T.module.m();
      long v2 = umat_det(T.module.phi()).val_lower();
      tw.add(m2 == M.m() + j * d && v2 == -m2, cfg.N, [&] {
        return std::pair{Json{{"m_twisted", m2}, {"v_det", v2}}, Json{{"m_plus_jd", M.m() + j * d}}};
      });
      UnramifiedElt alpha = eta.unram ? *eta.unram : UnramifiedElt::one(F);
      UnramifiedElt chk = T.period.frobenius() - alpha * T.period;
      per.add(chk.is_zero(), cfg.N,
              [&] { return std::pair{unram_json(T.period.frobenius()), unram_json(alpha * T.period)}; });
      sg.add(sign_twist_check(e.c, d, M.m(), j), cfg.N, [&] {
        return std::pair{Json{{"d", d}, {"m", M.m()}, {"j", j}}, Json{{"m_plus_jd", M.m() + j * d}}};
      });
    } catch (const std::exception& ex) {
      det.error(ex);
    }
  }
  return {det.done(), tw.done(), per.done(), sg.done()};
}

std::vector<CheckResult> suite_twist_ladder(const RunConfig& cfg, int trials, long rmax) {
  Env e(cfg, 9);
  const IwCtx& c = e.c;
  long D = cfg.D;
  std::vector<Agg> aggs;
  for (long r = 1; r <= rmax; ++r)
    aggs.emplace_back(tag("twist_ladder.r", r), "(ell_0 Tw_{chi^{-1}})^r = t^r d^r d^{-r}", cfg.N);
  PSeries tser = t_series(Padic::exact(e.ctx, 1), D);
  IwasawaElt l0 = IwasawaElt::ell(c, 0);
  for (int t = 0; t < trials; ++t) {
    IwasawaElt lam = IwasawaElt::random(c, e.rng, 6);
    try {
      PSeries f = mellin(lam, D);
      IwasawaElt cur = lam;
      PSeries tr = f;
      for (long r = 1; r <= rmax; ++r) {
        cur = l0 * cur.twist(-1);
        PSeries A = mellin(cur, D);
        PSeries B = mellin(lam.twist(-r), D);
        for (long i = r - 1; i >= 0; --i) B = ell_apply(i, B);
        tr = PSeries::mul(tser, tr, D);
        long dg = D - r;
        bool ok = agree(A, tr, dg) && agree(B, tr, dg);
        long dig = std::min(series_agreement(A, tr, dg), series_agreement(B, tr, dg));
        aggs[r - 1].add(ok, dig, [&] { return std::pair{series_json(A), series_json(tr)}; });
      }
    } catch (const std::exception& ex) {
      for (auto& a : aggs) a.error(ex);
    }
  }
  std::vector<CheckResult> out;
  for (auto& a : aggs) out.push_back(a.done());
  return out;
}

std::vector<CheckResult> run_suite(const RunConfig& cfg) {
  using Family = std::function<std::vector<CheckResult>()>;
  std::vector<Family> fams = {
      [&] { return suite_kubota_leopoldt(cfg); },
      [&] { return suite_identities(cfg); },
      [&] { return suite_factorials(cfg); },
      [&] { return suite_gauss(cfg); },
      [&] { return suite_fudge(cfg); },
      [&] { return suite_omega(cfg); },
      [&] { return suite_derivative(cfg); },
      [&] { return suite_crystalline(cfg); },
      [&] { return suite_twist_ladder(cfg); },
  };
  std::vector<std::vector<CheckResult>> res(fams.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < fams.size(); i = next++) res[i] = fams[i]();
  };
  int nt = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(fams.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<CheckResult> out;
  for (auto& r : res) out.insert(out.end(), r.begin(), r.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return out;
}

}  // namespace iwk
