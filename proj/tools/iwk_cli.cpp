// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "iwk/bernoulli.hpp"
#include "iwk/crystalline.hpp"
#include "iwk/epsilon.hpp"
#include "iwk/regulator.hpp"
#include "iwk/report.hpp"
#include "iwk/suite.hpp"

using namespace iwk;

namespace {

struct Flags {
  std::optional<unsigned> p;
  std::optional<long> N, D, DT;
  std::optional<int> level, jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
};

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (const char* path = std::getenv("IWK_CONFIG"); path && *path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(std::string("cannot read IWK_CONFIG file ") + path);
    merge_json(cfg, Json::parse(in));
  }
  if (f.p) cfg.p = *f.p;
  if (f.N) cfg.N = *f.N;
  if (f.D) cfg.D = *f.D;
  if (f.DT) cfg.DT = *f.DT;
  if (f.level) cfg.level = *f.level;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.seed) cfg.seed = *f.seed;
  if (f.format) cfg.format = *f.format;
  validate(cfg);
  return cfg;
}

// Little-endian base-p digits of x mod p^absprec, x integral.
Json residue_digits(const Padic& x) {
  if (x.is_zero()) return Json::array();
  if (x.valuation() < 0) return padic_json(x)["digits"];
  long n = std::min(x.absprec(), x.ctx()->N());
  mpz_class r = x.capped(n).to_mpz();
  Json d = Json::array();
  for (long i = 0; i < n; ++i) {
    mpz_class q = r % x.p();
    d.push_back(q.get_ui());
    r /= x.p();
  }
  return d;
}

long digits_of(const Padic& d) {
  long n = d.ctx()->N();
  return std::min(n, d.is_zero() ? d.absprec() : d.valuation());
}

long digits_of(const CycloElt& d, long N) {
  return std::min(N, d.is_zero() ? d.min_absprec() : d.val_lower());
}

DeRhamChar conductor_char(unsigned p, long j, long tame, int cond, long wild_exp) {
  if (cond < 0) throw std::invalid_argument("conductor exponent must be >= 0");
  DeRhamChar eta{j, tame, 0, 0, {}};
  if (cond >= 2) {
    eta.wild_level = cond - 1;
    eta.wild_exp = wild_exp;
  }
  if (eta.conductor(p) != cond)
    throw std::invalid_argument("no character with that conductor: tame part must be nontrivial at "
                                "conductor 1 and trivial-free parts give conductor 0");
  return eta;
}

struct ZetaArgs {
  long c = 2, j = 1;
};

Json run_zeta(const RunConfig& cfg, const ZetaArgs& a, bool& ok) {
  const PadicContext* ctx = PadicContext::get(cfg.p, cfg.N);
  auto ic = IwasawaContext::create(ctx, cfg.DT);
  RegulatorOutput reg = cyclo_regulator(dlog(coleman_gc(ctx, a.c), cfg.D), cfg.level);
  Padic v = regulator_value(ic, reg, DeRhamChar::chi_power(a.j)).to_padic();
  mpq_class target = kubota_leopoldt_target(cfg.p, a.c, a.j);
  Padic t = Padic::from_rational(ctx, target);
  long dig = digits_of(v - t);
  ok = dig >= cfg.N - 5;
  CheckResult r{"zeta.c" + std::to_string(a.c) + ".j" + std::to_string(a.j),
                "Coleman pipeline: (1-p^j)(c^{j+1}-1)B_{j+1}/(j+1)", ok, padic_json(v),
                rational_json(target), dig};
  Json out = make_report(cfg, {r});
  out["value"] = padic_json(v);
  out["value_digits"] = residue_digits(v);
  out["oracle"] = target.get_str();
  out["match"] = ok;
  return out;
}

struct GaussArgs {
  long tame = 1, wild_exp = 1;
  int cond = 1;
};

Json run_gauss(const RunConfig& cfg, const GaussArgs& a, bool& ok) {
  const PadicContext* ctx = PadicContext::get(cfg.p, cfg.N);
  auto ic = IwasawaContext::create(ctx, cfg.DT);
  DeRhamChar eta = conductor_char(cfg.p, 0, a.tame, a.cond, a.wild_exp);
  CycloElt tau = gauss_sum_power(ic, eta, 1);
  CycloElt prod = tau * gauss_sum_power(ic, eta.inverse(), 1);
  CycloElt expect = CycloElt::from_padic(
      Padic::exact(ctx, eta.sign_at_minus_one() * ipow(cfg.p, eta.conductor(cfg.p))), prod.level());
  CycloElt diff = prod - expect;
  ok = diff.is_zero();
  CheckResult r{"gauss.norm", "tau(eta) tau(eta^{-1}) = eta(-1) p^n", ok, cyclo_json(prod),
                cyclo_json(expect), digits_of(diff, cfg.N)};
  std::vector<CheckResult> checks{r};
  for (long cc : {2L, static_cast<long>(cfg.p) + 1}) {
    XiChange x = xi_change_check(ic, eta, cc);
    CycloElt d = x.lhs - x.rhs;
    checks.push_back(CheckResult{"gauss.xi_change.c" + std::to_string(cc),
                                 "tau(eta_0, xi^c) = eta_0(c) tau(eta_0, xi)", x.equal,
                                 cyclo_json(x.lhs), cyclo_json(x.rhs),
                                 digits_of(d, cfg.N)});
    ok = ok && x.equal;
  }
  Json out = make_report(cfg, checks);
  out["conductor"] = eta.conductor(cfg.p);
  out["tau"] = cyclo_json(tau);
  out["tau_squared"] = cyclo_json(tau * tau);
  return out;
}

struct EpsArgs {
  long j = 0, tame = 1, wild_exp = 1;
  int cond = 1;
  std::optional<long> tate;
};

Json run_eps(const RunConfig& cfg, const EpsArgs& a) {
  const PadicContext* ctx = PadicContext::get(cfg.p, cfg.N);
  auto ic = IwasawaContext::create(ctx, cfg.DT);
  DeRhamChar eta = conductor_char(cfg.p, a.j, a.tame, a.cond, a.wild_exp);
  Json out = make_report(cfg, {});
  out["conductor"] = eta.conductor(cfg.p);
  if (a.tate) {
    CrysModule M = CrysModule::tate(ctx, *a.tate);
    out["eps"] = eps_json(eps_crystalline_twist(ic, M, eta));
    out["eps_dR"] = eps_json(eps_dr_scalar(M));
  } else {
    out["eps"] = eps_json(eps_de_rham_char(ic, eta));
  }
  return out;
}

struct RegArgs {
  long c = 2, r = 0, jmax = 4;
};

Json run_regulator(const RunConfig& cfg, const RegArgs& a) {
  const PadicContext* ctx = PadicContext::get(cfg.p, cfg.N);
  auto ic = IwasawaContext::create(ctx, cfg.DT);
  PSeries y = dlog(coleman_gc(ctx, a.c), cfg.D);
  RegulatorOutput reg = a.r == 0 ? cyclo_regulator(y, cfg.level) : twisted_regulator(y, a.r, cfg.level);
  Json out = make_report(cfg, {});
  out["basis"] = reg.tag;
  out["phi_scalar"] = padic_json(reg.phi_scalar);
  out["transform"] = series_json(reg.series);
  Json vals = Json::array();
  for (long j = 0; j <= a.jmax; ++j)
    vals.push_back(Json{{"j", j}, {"value", cyclo_json(regulator_value(ic, reg, DeRhamChar::chi_power(j)))}});
  out["values"] = vals;
  return out;
}

struct ThetaArgs {
  long c = 2, r = 1, jmax = 4;
};

Json run_theta(const RunConfig& cfg, const ThetaArgs& a) {
  const PadicContext* ctx = PadicContext::get(cfg.p, cfg.N);
  auto ic = IwasawaContext::create(ctx, cfg.DT);
  if (a.r < 0) throw std::invalid_argument("theta needs r >= 0");
  PSeries y = dlog(coleman_gc(ctx, a.c), cfg.D);
  RegulatorOutput reg = a.r == 0 ? cyclo_regulator(y, cfg.level) : twisted_regulator(y, a.r, cfg.level);
  CrysModule M = CrysModule::tate(ctx, a.r);
  ThetaScalar th = theta_and_eps_scalar(ic, M, reg);
  Json out = make_report(cfg, {});
  out["eps_dR"] = eps_json(th.eps_dr);
  out["sign_component0"] = series_json(th.sign.comp(0));
  // The measure from a finite-level Mellin inverse is too lossy to
  // differentiate, so the numerator is read off the series directly.
  FractionElt ell = ell_of_rep(ic, M.weights());
  Json vals = Json::array();
  for (long j = 0; j <= a.jmax; ++j) {
    DeRhamChar eta = DeRhamChar::chi_power(j);
    CycloElt num = regulator_value(ic, reg, eta);
    LeadingTerm le = leading_term(ell, eta, 4);
    Json row{{"j", j}, {"regulator", cyclo_json(num)}, {"ell_order", le.order}};
    if (num.is_zero()) {
      row["order"] = nullptr;
      row["leading"] = nullptr;
    } else {
      row["order"] = -le.order;
      row["leading"] = cyclo_json(num / le.taylor);
    }
    vals.push_back(row);
  }
  out["theta_leading_terms"] = vals;
  return out;
}

void emit(const RunConfig& cfg, const Json& report) {
  if (cfg.format == "text") std::cout << report_text(report);
  else std::cout << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iwk: p-adic Iwasawa-theoretic computations"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--p", f.p, "odd prime");
  app.add_option("--prec", f.N, "p-adic precision N");
  app.add_option("--deg", f.D, "series degree D");
  app.add_option("--tdeg", f.DT, "degree in T = gamma_1 - 1");
  app.add_option("--level", f.level, "cyclotomic level cap");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--format", f.format, "json or text");
  app.add_option("--jobs", f.jobs, "worker threads for suite");

  auto* suite = app.add_subcommand("suite", "run every identity check");
  ZetaArgs za;
  auto* zeta = app.add_subcommand("zeta", "p-adic zeta value via the Coleman pipeline");
  zeta->add_option("--c", za.c, "auxiliary integer c prime to p");
  zeta->add_option("--j", za.j, "character chi^j, j >= 1");
  GaussArgs ga;
  auto* gauss = app.add_subcommand("gauss", "Gauss sum of a finite-order character");
  gauss->add_option("--tame", ga.tame, "tame exponent i of omega^i");
  gauss->add_option("--level", ga.cond, "conductor exponent n");
  gauss->add_option("--wild-exp", ga.wild_exp, "wild exponent, prime to p");
  EpsArgs ea;
  auto* eps = app.add_subcommand("eps", "epsilon factor of a de Rham character");
  eps->add_option("--j", ea.j, "weight j of chi^j");
  eps->add_option("--tame", ea.tame, "tame exponent");
  eps->add_option("--level", ea.cond, "conductor exponent n");
  eps->add_option("--wild-exp", ea.wild_exp, "wild exponent");
  eps->add_option("--tate", ea.tate, "twist Q_p(r) by the character");
  RegArgs ra;
  auto* regc = app.add_subcommand("regulator", "regulator of dlog g_c");
  regc->add_option("--c", ra.c, "auxiliary integer c");
  regc->add_option("--r", ra.r, "Tate twist r >= 0");
  regc->add_option("--jmax", ra.jmax, "values at chi^0 .. chi^jmax");
  ThetaArgs ta;
  auto* theta = app.add_subcommand("theta", "regulator divided by ell(V) for Q_p(r)");
  theta->add_option("--c", ta.c, "auxiliary integer c");
  theta->add_option("--r", ta.r, "Tate twist r >= 0");
  theta->add_option("--jmax", ta.jmax, "leading terms at chi^0 .. chi^jmax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg = resolve(f);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    bool ok = true;
    Json report;
    if (suite->parsed()) {
      auto checks = run_suite(cfg);
      report = make_report(cfg, checks);
      ok = report["summary"]["fail"] == 0;
    } else if (zeta->parsed()) {
      if (za.j < 1) throw std::invalid_argument("--j must be >= 1");
      report = run_zeta(cfg, za, ok);
    } else if (gauss->parsed()) {
      report = run_gauss(cfg, ga, ok);
    } else if (eps->parsed()) {
      report = run_eps(cfg, ea);
    } else if (regc->parsed()) {
      report = run_regulator(cfg, ra);
    } else if (theta->parsed()) {
      report = run_theta(cfg, ta);
    }
    emit(cfg, report);
    return ok ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json err = make_report(cfg, {});
    err["error"] = e.what();
    emit(cfg, err);
    return 1;
  }
}
