// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_EPSILON_HPP
#define IWK_EPSILON_HPP

#include <optional>

#include "iwk/crystalline.hpp"
#include "iwk/cyclotomic.hpp"
#include "iwk/iwasawa.hpp"

namespace iwk {

// cyclo * p^p_power * unram * t^t_exp; unram unset means 1.
struct EpsFactor {
  CycloElt cyclo;
  long p_power = 0;
  std::optional<UnramifiedElt> unram;
  long t_exp = 0;

  static EpsFactor one(const PadicContext* ctx);
  friend EpsFactor operator*(const EpsFactor& a, const EpsFactor& b);
  EpsFactor pow(long k) const;
  // Componentwise equality at the attained precision.
  bool equals(const EpsFactor& o) const;
};

// sign = +1 uses zeta, sign = -1 uses zeta^{-1}.
EpsFactor gauss_sum(const IwCtx& c, const DeRhamChar& eta, int sign = 1);
// sum_a eta_0(a)^{-1} zeta^{k a}
CycloElt gauss_sum_power(const IwCtx& c, const DeRhamChar& eta, long k);
// eta_1(sigma)^{-n} p^{-nj} tau(eta_0, xi)
EpsFactor eps_de_rham_char(const IwCtx& c, const DeRhamChar& eta, int sign = 1);
// eps(eta)^d det(phi)^n
EpsFactor eps_crystalline_twist(const IwCtx& c, const CrysModule& M,
                                const DeRhamChar& eta, int sign = 1);
// t^{m(V)} times the accumulated period
EpsFactor eps_dr_scalar(const CrysModule& M);

struct XiChange {
  CycloElt lhs;
  CycloElt rhs;
  bool equal = false;
};
// tau(eta_0, xi^c) against eta_0(c) tau(eta_0, xi)
XiChange xi_change_check(const IwCtx& c, const DeRhamChar& eta, long cc);

}  // namespace iwk

#endif
