// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_IWASAWA_HPP
#define IWK_IWASAWA_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "iwk/cyclotomic.hpp"
#include "iwk/padic.hpp"
#include "iwk/series.hpp"
#include "iwk/unramified.hpp"

namespace iwk {

// eta = chi^j * omega^tame * (wild part) * (unramified part).
// The wild part sends gamma_1 to zeta_{p^w}^e, w = wild_level.
struct DeRhamChar {
  long j = 0;
  long tame = 0;
  int wild_level = 0;
  long wild_exp = 0;
  std::optional<UnramifiedElt> unram;  // value at arithmetic Frobenius

  static DeRhamChar chi_power(long j) { return DeRhamChar{j, 0, 0, 0, {}}; }
  int conductor(unsigned p) const;
  long tame_mod(unsigned p) const;
  // eta * chi^k
  DeRhamChar times_chi(long k) const;
  // eta * <chi>^s, i.e. chi^s omega^{-s}
  DeRhamChar times_angle(long s) const;
  DeRhamChar inverse() const;
  // (-1)^{j + tame}
  int sign_at_minus_one() const;
  bool is_finite_order() const { return j == 0; }
};

// Shared read-only data for Lambda(Gamma) at fixed (p, N, D_T).
class IwasawaContext {
 public:
  // Storage degree defaults to D_T + N + 10 so that twists and
  // evaluations keep about N digits up to degree D_T.
  static std::shared_ptr<const IwasawaContext> create(const PadicContext* ctx,
                                                      long dt, long guard = -1);

  const PadicContext* ctx() const { return ctx_; }
  unsigned p() const { return ctx_->p(); }
  long N() const { return ctx_->N(); }
  long dt() const { return dt_; }
  long dstore() const { return dstore_; }
  int ncomp() const { return static_cast<int>(ctx_->p()) - 1; }
  // Teichmuller value omega(b), b prime to p.
  const Padic& omega(long b) const;
  Padic omega_pow(long b, long i) const;
  // chi(gamma_1) = 1 + p, exact.
  const Padic& u() const { return u_; }
  Padic u_pow(long k) const;
  const Padic& log_u() const { return log_u_; }
  // Exponent e in [0, p^k) with <a> = u^e modulo p^{k+1}.
  long log_u_index(long a, int k) const;

 private:
  IwasawaContext() = default;
  const PadicContext* ctx_ = nullptr;
  long dt_ = 0, dstore_ = 0;
  std::vector<Padic> omega_;
  Padic u_, log_u_;
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<long>> log_tables_;
};

using IwCtx = std::shared_ptr<const IwasawaContext>;

// Taylor data in s of F(eta(gamma_1) e^{s log u} - 1).
struct LeadingTerm {
  long order = 0;
  CycloElt taylor;      // coefficient of s^order
  CycloElt derivative;  // order! * taylor
};

// Element of Lambda(Gamma) or H(Gamma): p-1 components, component i is
// the image under delta -> omega(delta)^i as a series in T = gamma_1 - 1.
class IwasawaElt {
 public:
  IwasawaElt() = default;
  IwasawaElt(IwCtx ctx, std::vector<PSeries> comps);

  static IwasawaElt zero(const IwCtx& c);
  static IwasawaElt one(const IwCtx& c);
  static IwasawaElt constant(const IwCtx& c, const Padic& a);
  // [delta_b] gamma_1^a with delta_b the element of Delta where chi = omega(b).
  static IwasawaElt group_like(const IwCtx& c, long b, const Padic& a);
  // The group element with chi equal to the integer x prime to p, at
  // finite level k (exponent reduced modulo p^k).
  static IwasawaElt group_elt(const IwCtx& c, long x, int k);
  static IwasawaElt gamma1(const IwCtx& c);
  // gamma_{-1}: the element of Delta with chi = -1.
  static IwasawaElt gamma_minus_one(const IwCtx& c);
  // log(gamma)/log chi(gamma) - j.
  static IwasawaElt ell(const IwCtx& c, long j);
  // (1 - gamma_1)(1 - u^{-1} gamma_1)...(1 - u^{1-k} gamma_1).
  static IwasawaElt p_element(const IwCtx& c, long k);
  // Random element with Z_p coefficients, polynomial of degree deg.
  static IwasawaElt random(const IwCtx& c, std::mt19937_64& rng, long deg);

  const IwCtx& ictx() const { return c_; }
  const PadicContext* ctx() const { return c_->ctx(); }
  const PSeries& comp(int i) const { return comps_[i]; }
  const std::vector<PSeries>& comps() const { return comps_; }
  // All coefficients integral.
  bool is_integral() const;
  bool is_zero() const;

  IwasawaElt operator-() const;
  friend IwasawaElt operator+(const IwasawaElt& a, const IwasawaElt& b);
  friend IwasawaElt operator-(const IwasawaElt& a, const IwasawaElt& b);
  friend IwasawaElt operator*(const IwasawaElt& a, const IwasawaElt& b);
  friend IwasawaElt operator*(const IwasawaElt& a, const Padic& s);
  friend IwasawaElt operator*(const Padic& s, const IwasawaElt& a) { return a * s; }

  // Tw_{chi^k omega^tame}: gamma -> chi^k omega^tame(gamma) gamma.
  IwasawaElt twist(long k, long tame = 0) const;
  // gamma -> gamma^{-1}.
  IwasawaElt involution() const;

  // Equality of components up to degree d (d < 0: D_T).
  friend bool agree(const IwasawaElt& a, const IwasawaElt& b, long d);

 private:
  IwCtx c_;
  std::vector<PSeries> comps_;
};

// Value at eta = F(eta(gamma_1) - 1) on the matching component.
CycloElt evaluate_char(const IwasawaElt& x, const DeRhamChar& eta);
CycloElt derivative_at(const IwasawaElt& x, const DeRhamChar& eta);
LeadingTerm leading_term(const IwasawaElt& x, const DeRhamChar& eta,
                         long max_order);
// eta(gamma_1) = zeta_{p^w}^e u^j as a level-w element.
CycloElt char_at_gamma1(const IwCtx& c, const DeRhamChar& eta);
// eta on the group element of chi = x (x prime to p).
CycloElt char_value(const IwCtx& c, const DeRhamChar& eta, long x);

// Element of Lambda(Gamma) tensor Z_p[zeta_{p^n}], held as coordinates in
// the power basis of zeta.
class IwasawaCycloElt {
 public:
  IwasawaCycloElt(const IwasawaElt& x, int level);
  static IwasawaCycloElt scalar(const IwCtx& c, const CycloElt& a);
  int level() const { return level_; }
  friend IwasawaCycloElt operator+(const IwasawaCycloElt& a,
                                   const IwasawaCycloElt& b);
  friend IwasawaCycloElt operator-(const IwasawaCycloElt& a,
                                   const IwasawaCycloElt& b);
  friend IwasawaCycloElt operator*(const IwasawaCycloElt& a,
                                   const IwasawaCycloElt& b);
  CycloElt evaluate(const DeRhamChar& eta) const;
  CycloElt derivative_at(const DeRhamChar& eta) const;

 private:
  IwasawaCycloElt() = default;
  int level_ = 0;
  std::vector<IwasawaElt> parts_;
};

// Formal quotient kept in factored form.
class FractionElt {
 public:
  FractionElt() = default;
  explicit FractionElt(IwasawaElt num);
  FractionElt(std::vector<IwasawaElt> num, std::vector<IwasawaElt> den);
  static FractionElt one(const IwCtx& c);

  const std::vector<IwasawaElt>& num() const { return num_; }
  const std::vector<IwasawaElt>& den() const { return den_; }
  IwasawaElt num_product() const;
  IwasawaElt den_product() const;

  friend FractionElt operator*(const FractionElt& a, const FractionElt& b);
  FractionElt inverse() const;
  FractionElt twist(long k, long tame = 0) const;
  FractionElt involution() const;
  FractionElt negated() const;

  // Every denominator component is nonzero at some probe character.
  bool denominator_ok() const;
  // Cross-multiplication up to degree d (default D_T).
  bool equals(const FractionElt& o, long d = -1) const;

  const IwCtx& ictx() const { return c_; }
  bool sign_negative() const { return negate_; }

 private:
  IwCtx c_;
  std::vector<IwasawaElt> num_, den_;
  bool negate_ = false;
};

CycloElt evaluate_char(const FractionElt& x, const DeRhamChar& eta);
// Orders add and Taylor coefficients multiply across factors; the order
// may be negative.
LeadingTerm leading_term(const FractionElt& x, const DeRhamChar& eta,
                         long max_order);

FractionElt mu_element(const IwCtx& c, long n);
FractionElt ell_of_rep(const IwCtx& c, const std::vector<long>& weights);

// A_{h,eta} at eta from leading terms of (ell_{h-1}...ell_0)/(gamma_1 - eta(gamma_1)).
CycloElt fudge_factor(const IwCtx& c, long h, const DeRhamChar& eta);
// Closed form (-1)^{h-j-1}(h-j-1)! j!/(eta(gamma_1) log u).
CycloElt fudge_closed_form(const IwCtx& c, long h, const DeRhamChar& eta);

// ---------------------------------------------------------------------------
// Mellin transform Lambda(Gamma) -> R[[pi]]^{psi=0}, gamma -> (1+pi)^{chi(gamma)}.

PSeries mellin(const IwasawaElt& x, long deg);
// Finite level element with masses on (Z/p^{k+1})^x.
IwasawaElt mellin_inverse(const IwCtx& c, const PSeries& f, int k);
// Masses m(a), a in (Z/p^{k+1}) (non-units included), of the measure of f.
std::vector<Padic> measure_masses(const PSeries& f, int k);
// Integral of eta against the measure with transform f.
CycloElt evaluate_measure_series(const IwCtx& c, const PSeries& f,
                                 const DeRhamChar& eta);
// psi(f) vanishes at the attained precision.
bool in_psi_kernel(const PSeries& f);

}  // namespace iwk

#endif
