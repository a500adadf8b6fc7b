// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_CRYSTALLINE_HPP
#define IWK_CRYSTALLINE_HPP

#include <gmpxx.h>

#include <map>
#include <random>
#include <vector>

#include "iwk/iwasawa.hpp"
#include "iwk/unramified.hpp"

namespace iwk {

using UMatrix = std::vector<std::vector<UnramifiedElt>>;

UMatrix umat_identity(const FieldPtr& F, long n);
UMatrix umat_mul(const UMatrix& a, const UMatrix& b);
UMatrix umat_scale(const UMatrix& a, const UnramifiedElt& s);
UMatrix umat_sub(const UMatrix& a, const UMatrix& b);
UnramifiedElt umat_det(const UMatrix& a);
UMatrix umat_inverse(const UMatrix& a);
// Same value viewed in F; x must lie in F or in Z_p.
UnramifiedElt promote(const UnramifiedElt& x, const FieldPtr& F);

// phi-module with Hodge-Tate weights.  The constructor enforces
// v_p(det phi) = -m(V).
class CrysModule {
 public:
  CrysModule(FieldPtr F, UMatrix phi, std::vector<long> weights);

  // Rank one over Z_p with the given phi scalar.
  static CrysModule rank_one(const PadicContext* ctx, const Padic& phi, long weight);
  // Q_p(r): phi = p^{-r}, weight r.
  static CrysModule tate(const PadicContext* ctx, long r);
  // phi = U diag(p^{-n_i} u_i) U' with U, U' unimodular.
  static CrysModule random_admissible(const FieldPtr& F, std::mt19937_64& rng,
                                      const std::vector<long>& weights);
  static CrysModule direct_sum(const CrysModule& a, const CrysModule& b);

  const FieldPtr& field() const { return F_; }
  const PadicContext* ctx() const { return F_->ctx(); }
  long dim() const { return static_cast<long>(weights_.size()); }
  const UMatrix& phi() const { return phi_; }
  const std::vector<long>& weights() const { return weights_; }
  // n(r): multiplicity of r among the weights
  std::map<long, long> fil_jumps() const;
  long m() const;
  // Accumulated unramified period (1 unless produced by a twist).
  const UnramifiedElt& period() const { return period_; }
  CrysModule with_period(const UnramifiedElt& u) const;
  // phi scalar of a rank-one module
  const UnramifiedElt& phi_scalar() const;

 private:
  FieldPtr F_;
  UMatrix phi_;
  std::vector<long> weights_;
  UnramifiedElt period_;
};

// Gamma*(r) = (r-1)! for r > 0 and (-1)^r/(-r)! for r <= 0.
mpq_class gamma_star(long r);
// prod_r Gamma*(r)^{-n(r)}
mpq_class gamma_factor(const std::vector<long>& weights);

struct EulerOperators {
  UMatrix one_minus_phi;       // 1 - p^j phi
  UMatrix one_minus_pinv_phi;  // 1 - p^{-1-j} phi^{-1}
  UnramifiedElt det_one;
  UnramifiedElt det_pinv;
  bool bad_one = false;
  bool bad_pinv = false;
};
EulerOperators euler_operators(const CrysModule& M, long j = 0);

struct TwistedModule {
  CrysModule module;
  UnramifiedElt period;  // u with sigma(u) = alpha u
};
// eta = chi^j eta_1; phi -> alpha^{-1} p^{-j} phi, weights + j.
TwistedModule unramified_twist(const CrysModule& M, const DeRhamChar& eta);

struct FactorialsResult {
  Padic lhs;
  mpq_class rhs;
  long order = 0;      // vanishing order of ell(V) at chi^j
  long agreement = 0;  // relative digits
  bool equal = false;
};
FactorialsResult factorials_check(const IwCtx& c, const std::vector<long>& weights,
                                  long j);

}  // namespace iwk

#endif
