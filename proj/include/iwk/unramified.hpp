// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_UNRAMIFIED_HPP
#define IWK_UNRAMIFIED_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "iwk/padic.hpp"

namespace iwk {

class FrobeniusObstruction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Z_{p^f} = Z_p[X]/(P) with P monic of degree f, irreducible mod p.
class UnramifiedField {
 public:
  // Random irreducible P drawn from a seeded generator.
  static std::shared_ptr<const UnramifiedField> create(const PadicContext* ctx,
                                                       int f,
                                                       std::uint64_t seed = 1);
  // P given low degree first, monic, length f + 1.
  static std::shared_ptr<const UnramifiedField> with_poly(
      const PadicContext* ctx, std::vector<long> poly);
  // Degree one field, i.e. Z_p.
  static std::shared_ptr<const UnramifiedField> trivial(const PadicContext* ctx);

  const PadicContext* ctx() const { return ctx_; }
  int f() const { return f_; }
  const std::vector<long>& poly() const { return poly_; }
  // coordinates of sigma(X)^i, i < f
  const std::vector<std::vector<Padic>>& frob_table() const { return frob_; }

 private:
  UnramifiedField() = default;
  void init_frobenius();
  const PadicContext* ctx_ = nullptr;
  int f_ = 1;
  std::vector<long> poly_;
  std::vector<std::vector<Padic>> frob_;
};

using FieldPtr = std::shared_ptr<const UnramifiedField>;

bool fp_irreducible(const std::vector<long>& poly, long p);

class UnramifiedElt {
 public:
  UnramifiedElt() = default;
  static UnramifiedElt zero(const FieldPtr& F);
  static UnramifiedElt one(const FieldPtr& F);
  static UnramifiedElt from_padic(const FieldPtr& F, const Padic& a);
  static UnramifiedElt generator(const FieldPtr& F);
  static UnramifiedElt from_coords(const FieldPtr& F, std::vector<Padic> c);
  // Reduction of sum c_i X^i modulo P.
  static UnramifiedElt from_poly(const FieldPtr& F, std::vector<Padic> c);
  // Lift of a residue given by its F_p coordinates.
  static UnramifiedElt from_residue(const FieldPtr& F,
                                    const std::vector<long>& r);
  static UnramifiedElt random_integer(const FieldPtr& F, std::mt19937_64& rng);

  const FieldPtr& field() const { return F_; }
  const PadicContext* ctx() const { return F_->ctx(); }
  int f() const { return F_->f(); }
  const Padic& coord(int i) const { return c_[i]; }
  const std::vector<Padic>& coords() const { return c_; }
  std::vector<long> residue() const;

  UnramifiedElt operator-() const;
  friend UnramifiedElt operator+(const UnramifiedElt& a, const UnramifiedElt& b);
  friend UnramifiedElt operator-(const UnramifiedElt& a, const UnramifiedElt& b);
  friend UnramifiedElt operator*(const UnramifiedElt& a, const UnramifiedElt& b);
  friend UnramifiedElt operator*(const UnramifiedElt& a, const Padic& b);
  friend UnramifiedElt operator*(const Padic& b, const UnramifiedElt& a) {
    return a * b;
  }
  friend UnramifiedElt operator/(const UnramifiedElt& a, const UnramifiedElt& b) {
    return a * b.inverse();
  }
  UnramifiedElt& operator+=(const UnramifiedElt& o) { return *this = *this + o; }
  UnramifiedElt& operator*=(const UnramifiedElt& o) { return *this = *this * o; }
  UnramifiedElt pow(long e) const;
  UnramifiedElt inverse() const;

  UnramifiedElt frobenius() const;
  UnramifiedElt frobenius_power(int k) const;
  Padic trace() const;
  Padic norm() const;
  // Lies on the Z_p-line: coordinates (c, 0, ..., 0).
  bool is_rational() const;

  bool is_zero() const;
  bool is_exact_zero() const;
  bool equals(const UnramifiedElt& o) const { return (*this - o).is_zero(); }
  UnramifiedElt capped(long cap) const;

  UnramifiedElt zero_like() const { return zero(F_); }
  UnramifiedElt one_like() const { return one(F_); }
  long min_absprec() const;
  long val_lower() const;
  UnramifiedElt frob() const { return frobenius(); }

 private:
  FieldPtr F_;
  std::vector<Padic> c_;
};

UnramifiedElt teichmuller(const UnramifiedElt& x);
// Logarithm and exponential on 1 + pO and pO.
UnramifiedElt unr_log(const UnramifiedElt& u);
UnramifiedElt unr_exp(const UnramifiedElt& y);

// y with (1 - sigma) y = x and vanishing constant coordinate.
UnramifiedElt solve_frobenius_additive(const UnramifiedElt& x);
// u with sigma(u) = alpha u.
UnramifiedElt solve_frobenius_multiplicative(const UnramifiedElt& alpha);

// Embedding Z_{p^f} into Z_{p^F} for f | F sending X to a root of P_f.
class UnramifiedEmbedding {
 public:
  UnramifiedEmbedding(FieldPtr small, FieldPtr big);
  UnramifiedElt operator()(const UnramifiedElt& x) const;
  const UnramifiedElt& root() const { return root_; }

 private:
  FieldPtr small_, big_;
  UnramifiedElt root_;
};

}  // namespace iwk

#endif
