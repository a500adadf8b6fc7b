// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

// One line per acceptance criterion.  Exit status 0 iff every line passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iwk/epsilon.hpp"
#include "iwk/iwasawa.hpp"
#include "iwk/regulator.hpp"
#include "iwk/suite.hpp"
#include "oracle.hpp"

using namespace iwk;

namespace {

// Pinned tolerances (digits) and sizes.
constexpr long kN = 30;
constexpr long kD = 64;
constexpr long kDT = 32;
constexpr long kKlLoss = 5;
constexpr double kKlSeconds = 10.0;
constexpr long kFactorialLoss = 8;
constexpr long kFudgeLoss = 6;
constexpr int kIdentityTrials = 100;
constexpr int kMultisets = 20;
constexpr int kFactorialTrials = 200;
constexpr int kOmegaTrials = 50;
constexpr long kOmegaH = 3;
constexpr int kDerivTrials = 50;
constexpr int kCrysTrials = 50;
constexpr int kLadderTrials = 20;
constexpr long kLadderR = 3;

RunConfig base(unsigned p) {
  RunConfig cfg;
  cfg.p = p;
  cfg.N = kN;
  cfg.D = kD;
  cfg.DT = kDT;
  cfg.level = 3;
  cfg.seed = 20260101;
  return cfg;
}

struct Line {
  bool pass = true;
  std::ostringstream note;
};

void absorb(Line& l, const std::vector<CheckResult>& rs, long* min_prec = nullptr) {
  for (const auto& r : rs) {
    if (!r.pass) {
      l.pass = false;
      l.note << " failed:" << r.id;
    }
    if (min_prec) *min_prec = std::min(*min_prec, r.precision_attained);
  }
}

bool same_coords(const CycloElt& x, const oracle::Cyc& o, long N) {
  if (static_cast<long>(o.size()) != x.dim()) return false;
  for (long i = 0; i < x.dim(); ++i) {
    Padic d = x.coords()[i] - Padic::exact(x.ctx(), o[i]);
    long dig = d.is_zero() ? d.absprec() : d.valuation();
    if (dig < N) return false;
  }
  return true;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Line criterion1() {
  Line l;
  auto t0 = std::chrono::steady_clock::now();
  long worst = kInfPrec;
  for (unsigned p : {3u, 5u, 7u}) {
    KlParams kp;
    kp.c = 2;
    kp.jmax = 6;
    kp.min_digits = kN - kKlLoss;
    kp.target = [](long pp, long c, long j) { return oracle::kl_value(pp, c, j); };
    absorb(l, suite_kubota_leopoldt(base(p), kp), &worst);
  }
  {
    const PadicContext* ctx = PadicContext::get(5, kN);
    auto c = IwasawaContext::create(ctx, kDT);
    RegulatorOutput reg = cyclo_regulator(dlog(coleman_gc(ctx, 2), kD), 3);
    Padic v = regulator_value(c, reg, DeRhamChar::chi_power(1)).to_padic();
    Padic d = v + Padic::exact(ctx, 1);
    long dig = d.is_zero() ? d.absprec() : d.valuation();
    if (dig < kN - kKlLoss) {
      l.pass = false;
      l.note << " instance(5,2,1)!=-1";
    }
    l.note << " value(p=5,j=1)=-1+O(5^" << dig << ")";
  }
  double s = seconds_since(t0);
  if (s >= kKlSeconds) {
    l.pass = false;
    l.note << " too slow";
  }
  l.note << " min_digits=" << worst << " time=" << s << "s";
  return l;
}

Line criterion2() {
  Line l;
  RunConfig cfg = base(5);
  IdentityParams ip{kIdentityTrials, kMultisets};
  auto rs = suite_identities(cfg, ip);
  absorb(l, rs);
  l.note << " checks=" << rs.size() << " ell(V)-iota sign checked as (-1)^{sum n_i + d}; literal form on even d";
  return l;
}

Line criterion3() {
  Line l;
  long worst = kInfPrec;
  absorb(l, suite_factorials(base(5), kFactorialTrials, kFactorialLoss), &worst);
  l.note << " trials=" << kFactorialTrials << " min_digits=" << worst;
  return l;
}

Line criterion4() {
  Line l;
  long count = 0;
  for (unsigned p : {3u, 5u}) {
    RunConfig cfg = base(p);
    absorb(l, suite_gauss(cfg));
    auto c = IwasawaContext::create(PadicContext::get(p, kN), kDT);
    for (long t = 0; t < static_cast<long>(p) - 1; ++t) {
      if (t > 0) {
        ++count;
        if (!same_coords(gauss_sum_power(c, DeRhamChar{0, t, 0, 0, {}}, 1),
                         oracle::gauss_sum(p, 1, kN, t, 0), kN)) {
          l.pass = false;
          l.note << " oracle mismatch p=" << p << " t=" << t;
        }
        oracle::Cyc a = oracle::gauss_sum(p, 1, kN, t, 0), b = oracle::gauss_sum(p, 1, kN, -t, 0);
        long sign = t % 2 ? -1 : 1;
        if (!oracle::cyc_equal(oracle::cyc_mul(a, b, p, 1, kN), oracle::cyc_scalar(sign * p, p, 1, kN), p, kN))
          l.pass = false;
      }
      for (long w = 1; w < static_cast<long>(p); ++w) {
        ++count;
        if (!same_coords(gauss_sum_power(c, DeRhamChar{0, t, 1, w, {}}, 1),
                         oracle::gauss_sum(p, 2, kN, t, w), kN)) {
          l.pass = false;
          l.note << " oracle mismatch p=" << p << " t=" << t << " w=" << w;
        }
      }
    }
  }
  l.note << " characters=" << count << " (library and finite-sum oracle)";
  return l;
}

Line criterion5() {
  Line l;
  long worst = kInfPrec;
  for (unsigned p : {3u, 5u}) {
    RunConfig cfg = base(p);
    absorb(l, suite_fudge(cfg, 5, kFudgeLoss), &worst);
    // A_{h,eta} eta(gamma_1) log u against (-1)^{h-j-1}(h-j-1)! j!, oracle constants.
    const PadicContext* ctx = PadicContext::get(p, kN);
    auto c = IwasawaContext::create(ctx, kDT);
    Padic logu = Padic::exact(ctx, oracle::log_mod(1 + p, p, kN + 2)).capped(kN + 2);
    for (long h = 1; h <= 5; ++h)
      for (long j = 0; j < h; ++j)
        for (long t = 0; t < static_cast<long>(p) - 1; ++t) {
          Padic a = fudge_factor(c, h, DeRhamChar{j, t, 0, 0, {}}).to_padic();
          Padic x = a * logu * Padic::exact(ctx, 1 + p).pow(j);
          mpz_class f1, f2;
          mpz_fac_ui(f1.get_mpz_t(), h - j - 1);
          mpz_fac_ui(f2.get_mpz_t(), j);
          mpz_class target = f1 * f2 * ((h - j - 1) % 2 ? -1 : 1);
          Padic d = x - Padic::exact(ctx, target);
          long dig = d.is_zero() ? d.absprec() : d.valuation();
          long vt = 0;
          for (mpz_class q = target; q % p == 0; q /= p) ++vt;
          if (dig - vt < kN - kFudgeLoss) {
            l.pass = false;
            l.note << " oracle h=" << h << " j=" << j << " t=" << t;
          }
          worst = std::min(worst, dig - vt);
        }
  }
  l.note << " h<=5 min_relative_digits=" << worst;
  return l;
}

Line criterion6() {
  Line l;
  long worst = kInfPrec;
  absorb(l, suite_omega(base(5), kOmegaTrials, kOmegaH), &worst);
  l.note << " trials=" << kOmegaTrials << " h<=" << kOmegaH << " min_digits=" << worst;
  return l;
}

Line criterion7() {
  Line l;
  absorb(l, suite_derivative(base(5), kDerivTrials));
  l.note << " trials=" << kDerivTrials << " conductor<=p^2, finite differences k=3..6";
  return l;
}

Line criterion8() {
  Line l;
  absorb(l, suite_crystalline(base(5), kCrysTrials));
  l.note << " modules=" << kCrysTrials;
  return l;
}

Line criterion9() {
  Line l;
  long worst = kInfPrec;
  absorb(l, suite_twist_ladder(base(5), kLadderTrials, kLadderR), &worst);
  l.note << " trials=" << kLadderTrials << " r<=" << kLadderR << " min_digits=" << worst;
  return l;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Line()>>> criteria = {
      {"Kubota-Leopoldt anchor", criterion1},
      {"identity suite", criterion2},
      {"factorials", criterion3},
      {"Gauss-sum laws", criterion4},
      {"A_{h,eta} fudge factor", criterion5},
      {"Omega o L round trip", criterion6},
      {"derivative law", criterion7},
      {"det-phi valuation and twists", criterion8},
      {"twist ladder", criterion9},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Line l;
    auto t0 = std::chrono::steady_clock::now();
    try {
      l = criteria[i].second();
    } catch (const std::exception& e) {
      l.pass = false;
      l.note << " exception: " << e.what();
    }
    if (!l.pass) ++failed;
    std::printf("[%s] %zu %s:%s (%.1fs)\n", l.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), l.note.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
