// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_REGULATOR_HPP
#define IWK_REGULATOR_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

#include "iwk/crystalline.hpp"
#include "iwk/epsilon.hpp"
#include "iwk/iwasawa.hpp"
#include "iwk/series.hpp"

namespace iwk {

// Unit power series g; norm_compatible is set by check_norm_compatible.
struct ColemanSeries {
  PSeries g;
  bool norm_compatible = false;

  explicit ColemanSeries(PSeries s);
};

// ((1+pi)^c - 1)/pi, an exact polynomial of degree c - 1.
ColemanSeries coleman_gc(const PadicContext* ctx, long c);
// (1+pi) g'/g to degree deg.
PSeries dlog(const ColemanSeries& g, long deg);

struct NormCheck {
  bool norm_compatible = false;
  bool psi_fixed = false;
};
// Compares prod_{zeta in mu_p} g(zeta(1+pi) - 1) with phi(g), and when they
// agree also psi(dlog g) with dlog g.  Exact polynomials only.
NormCheck check_norm_compatible(ColemanSeries& g, long deg);

// Measure side of the rank-one regulator, kept through its transform
// series = (1 - lambda phi) Y, Y in the psi = lambda eigenspace.
struct RegulatorOutput {
  PSeries series;
  Padic phi_scalar;
  long t_shift = 0;
  int level = 1;
  std::string tag;  // which D_cris basis vector the measure multiplies
};

// Y with psi(Y) = lambda Y.
RegulatorOutput regulator(const PSeries& Y, const Padic& lambda, int level,
                          std::string tag, long t_shift = 0);
// V = Q_p: y psi-fixed, series = (1 - phi) y.
RegulatorOutput cyclo_regulator(const PSeries& y, int level, std::string tag = "e0");
// V(r) = Q_p(r): Y = t^r y on the basis t^{-r} e_r with phi scalar p^{-r}.
RegulatorOutput twisted_regulator(const PSeries& y, long r, int level);
// Finite level group-algebra element of the regulator.
IwasawaElt regulator_measure(const IwCtx& c, const RegulatorOutput& r);
CycloElt regulator_value(const IwCtx& c, const RegulatorOutput& r, const DeRhamChar& eta);

// y with (1 - lambda phi) y = x; for lambda = 1 the constant term of x must
// vanish and y is normalised by y(0) = 0.
PSeries solve_one_minus_lambda_phi(const PSeries& x, const Padic& lambda, long deg);

// (ell_{h-1} ... ell_0)(1 - lambda phi)^{-1}(ztilde); ztilde is the
// transform of z.  Throws when Delta(z) does not vanish.
PSeries big_exponential(const PSeries& ztilde, const Padic& lambda, long h, long deg);

// Inverse of the derivation on the psi = 0 part; exact polynomials only.
PSeries deriv_inverse(const PSeries& f);
// Same on the measure side: M(Tw_{chi^{-1}} lambda).
PSeries deriv_inverse_measure(const IwasawaElt& lam, long deg);

struct Prefactor {
  int conductor = 0;
  mpq_class gamma;   // Gamma*(1+j)
  EpsFactor scalar;  // Gamma*(1+j) eps(eta^{-1}, -xi) phi^n
  // n = 0 only: 1 - p^j phi and 1 - p^{-1-j} phi^{-1} on the phi scalar
  std::optional<UnramifiedElt> euler_num, euler_den, ratio;
  bool bad_one = false;
  bool bad_pinv = false;
};
// Rank-one M; an unramified part of eta divides the phi scalar.
Prefactor interpolation_prefactor(const IwCtx& c, const CrysModule& M,
                                  const DeRhamChar& eta);

// (-gamma_{-1})^d (-1)^m
IwasawaElt eps_sign_element(const IwCtx& c, long d, long m);
// Tw_{chi^{-j}} of the sign element against the sign element of m + jd.
bool sign_twist_check(const IwCtx& c, long d, long m, long j);

struct ThetaScalar {
  FractionElt theta;  // measure / ell(V)
  IwasawaElt sign;
  EpsFactor eps_dr;
};
ThetaScalar theta_and_eps_scalar(const IwCtx& c, const CrysModule& M,
                                 const RegulatorOutput& reg);

}  // namespace iwk

#endif
