// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_CYCLOTOMIC_HPP
#define IWK_CYCLOTOMIC_HPP

#include <vector>

#include "iwk/padic.hpp"

namespace iwk {

// Element of Z_p[zeta_{p^n}] in the power basis 1, X, ..., X^{phi-1},
// X being the fixed primitive p^n-th root of unity.  Level 0 is Z_p itself.
// Operands of different levels are lifted to the larger level.
class CycloElt {
 public:
  CycloElt() = default;
  static CycloElt zero(const PadicContext* ctx, int level);
  static CycloElt one(const PadicContext* ctx, int level);
  static CycloElt from_padic(const Padic& a, int level = 0);
  // zeta_{p^n}^a.
  static CycloElt zeta_power(const PadicContext* ctx, int level, long a);
  // Reduction of sum c_i X^i modulo Phi_{p^n}.
  static CycloElt from_poly(const PadicContext* ctx, int level,
                            std::vector<Padic> coeffs);

  const PadicContext* ctx() const { return ctx_; }
  int level() const { return level_; }
  long dim() const { return static_cast<long>(c_.size()); }
  const Padic& coord(long i) const { return c_[i]; }
  const std::vector<Padic>& coords() const { return c_; }

  CycloElt lift(int level) const;
  // Inverse of lift; throws if the element does not lie in the sublevel.
  CycloElt descend(int level) const;
  bool lies_in_level(int level) const;
  Padic to_padic() const { return descend(0).c_[0]; }

  CycloElt operator-() const;
  friend CycloElt operator+(const CycloElt& a, const CycloElt& b);
  friend CycloElt operator-(const CycloElt& a, const CycloElt& b);
  friend CycloElt operator*(const CycloElt& a, const CycloElt& b);
  friend CycloElt operator*(const CycloElt& a, const Padic& b);
  friend CycloElt operator*(const Padic& b, const CycloElt& a) { return a * b; }
  CycloElt& operator+=(const CycloElt& o) { return *this = *this + o; }
  CycloElt& operator-=(const CycloElt& o) { return *this = *this - o; }
  CycloElt& operator*=(const CycloElt& o) { return *this = *this * o; }
  CycloElt pow(long e) const;

  // Galois action zeta -> zeta^c, c a unit mod p.
  CycloElt galois(long c) const;
  // Norm down to Z_p.
  Padic norm() const;
  CycloElt inverse() const;
  friend CycloElt operator/(const CycloElt& a, const CycloElt& b) {
    return a * b.inverse();
  }

  bool is_zero() const;
  bool equals(const CycloElt& o) const { return (*this - o).is_zero(); }
  CycloElt capped(long cap) const;

  CycloElt zero_like() const { return zero(ctx_, level_); }
  CycloElt one_like() const { return one(ctx_, level_); }
  long min_absprec() const;
  long val_lower() const;
  CycloElt frob() const { return *this; }
  bool is_exact_zero() const;

 private:
  const PadicContext* ctx_ = nullptr;
  int level_ = 0;
  std::vector<Padic> c_;
};

// (p-1) p^{n-1} for n >= 1, 1 for n = 0.
long cyclo_dim(unsigned p, int level);
// p^n as a long.
long ipow(long p, int n);

}  // namespace iwk

#endif
