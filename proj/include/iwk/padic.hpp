// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_PADIC_HPP
#define IWK_PADIC_HPP

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwk {

// Absolute precision of an exact zero.
inline constexpr long kInfPrec = LONG_MAX / 4;
// Relative precision marking an exactly known nonzero integer.
inline constexpr long kExactRel = kInfPrec / 2;

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shared read-only data for one (p, N) pair.  Instances are interned and
// never freed, so raw pointers to them stay valid for the whole program.
class PadicContext {
 public:
  static const PadicContext* get(unsigned p, long N);

  unsigned p() const { return p_; }
  long N() const { return N_; }
  // p^k for k >= 0.
  mpz_class pow(long k) const;
  const mpz_class& pow_ref(long k) const;  // k < kCachedPowers
  // floor(log_p n) for n >= 1, 0 for n <= 0.
  long flog(long n) const;
  // v_p(n) for n != 0.
  long vp(long n) const;

  static constexpr long kCachedPowers = 768;

 private:
  PadicContext(unsigned p, long N);
  unsigned p_;
  long N_;
  std::vector<mpz_class> pows_;
};

bool is_odd_prime(unsigned long p);

// Element of Q_p held as p^v * u with u a unit known modulo p^r.
// r == 0 means a zero known to absolute precision v (v == kInfPrec for
// an exact zero).
class Padic {
 public:
  Padic() = default;
  explicit Padic(const PadicContext* ctx) : ctx_(ctx), v_(kInfPrec), r_(0) {}

  static Padic zero(const PadicContext* ctx, long absprec = kInfPrec);
  static Padic from_int(const PadicContext* ctx, long a, long relprec = -1);
  static Padic from_mpz(const PadicContext* ctx, const mpz_class& a,
                        long relprec = -1);
  // Exact integer; arithmetic with it never limits precision.
  static Padic exact(const PadicContext* ctx, const mpz_class& a);
  static Padic exact(const PadicContext* ctx, long a) {
    return exact(ctx, mpz_class(a));
  }
  static Padic from_rational(const PadicContext* ctx, const mpq_class& q,
                             long relprec = -1);
  // p^k exactly as a unit times a power of p.
  static Padic p_power(const PadicContext* ctx, long k, long relprec = -1);
  // Uniform element of Z_p modulo p^N.
  static Padic random_integer(const PadicContext* ctx, std::mt19937_64& rng,
                              long absprec = -1);

  const PadicContext* ctx() const { return ctx_; }
  unsigned p() const { return ctx_->p(); }

  bool is_zero() const { return r_ == 0; }
  bool is_exact_zero() const { return r_ == 0 && v_ >= kInfPrec; }
  // For a zero this is its absolute precision.
  long valuation() const { return v_; }
  long relprec() const { return r_; }
  long absprec() const { return r_ == 0 ? v_ : v_ + r_; }
  const mpz_class& unit() const { return u_; }
  bool is_unit() const { return r_ > 0 && v_ == 0; }
  bool is_exact() const { return r_ == 0 ? v_ >= kInfPrec : r_ >= kExactRel / 2; }

  Padic operator-() const;
  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator-=(const Padic& o) { return *this = *this - o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }
  Padic& operator/=(const Padic& o) { return *this = *this / o; }
  friend Padic operator+(const Padic& a, const Padic& b);
  friend Padic operator-(const Padic& a, const Padic& b);
  friend Padic operator*(const Padic& a, const Padic& b);
  friend Padic operator/(const Padic& a, const Padic& b);

  Padic inverse() const;
  Padic pow(long e) const;
  // Same value with absolute precision lowered to at most cap.
  Padic capped(long cap) const;
  // Multiply by p^k (k may be negative); never loses digits.
  Padic shifted(long k) const;

  // Exact rational representative u * p^v.
  mpq_class to_rational() const;
  // Integer representative in [0, p^absprec); requires valuation >= 0.
  mpz_class to_mpz() const;
  // Representative in (-p^absprec/2, p^absprec/2].
  mpz_class to_signed_mpz() const;
  // Little-endian base-p digits of the unit part.
  std::vector<unsigned> unit_digits() const;
  std::string to_string() const;

  // Equal at the common attained precision.
  bool equals(const Padic& o) const { return (*this - o).is_zero(); }

  // Series-coefficient interface shared with the extension rings.
  Padic zero_like() const { return zero(ctx_); }
  Padic one_like() const { return from_int(ctx_, 1); }
  long min_absprec() const { return absprec(); }
  long val_lower() const { return v_; }
  Padic frob() const { return *this; }

 private:
  Padic(const PadicContext* ctx, mpz_class u, long v, long r)
      : ctx_(ctx), u_(std::move(u)), v_(v), r_(r) {}
  Padic inverse_mod(long r) const;
  static Padic normalize(const PadicContext* ctx, mpz_class x, long v,
                         long absprec);

  const PadicContext* ctx_ = nullptr;
  mpz_class u_;
  long v_ = kInfPrec;
  long r_ = 0;
};

// Teichmuller representative of a mod p.
Padic teichmuller(const PadicContext* ctx, long a, long relprec = -1);
// Iwasawa-normalized logarithm restricted to 1-units.
Padic padic_log(const Padic& u);
// exp(x) for v(x) >= 1.
Padic padic_exp(const Padic& x);
// Binomial coefficient C(x, m) for x in Z_p.
std::vector<Padic> binomial_row(const Padic& x, long mmax);

long saturating_add(long a, long b);

}  // namespace iwk

#endif
