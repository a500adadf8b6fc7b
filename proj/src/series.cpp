// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/series.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace iwk {

long Tail::at(const PadicContext* ctx, long n) const {
  switch (kind) {
    case Kind::kExact:
      return kInfPrec;
    case Kind::kUnknown:
      return -kInfPrec;
    default:
      if (base >= kInfPrec) return kInfPrec;
      return base - growth * ctx->flog(n);
  }
}

Tail tail_min(const Tail& a, const Tail& b) {
  if (a.is_exact()) return b;
  if (b.is_exact()) return a;
  if (a.is_unknown() || b.is_unknown()) return Tail::unknown();
  return Tail::bounded(std::min(a.base, b.base), std::max(a.growth, b.growth));
}

Tail tail_shift(const Tail& a, long shift) {
  if (a.kind != Tail::Kind::kBounded) return a;
  if (shift >= kInfPrec) return Tail::exact();
  return Tail::bounded(saturating_add(a.base, shift), a.growth);
}

mpz_class binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

std::vector<mpz_class> stirling2_row(long k) {
  static std::mutex mu;
  static std::vector<std::vector<mpz_class>> rows = {{1}};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<long>(rows.size()) <= k) {
    const auto& prev = rows.back();
    long n = static_cast<long>(rows.size());
    std::vector<mpz_class> row(n + 1, 0);
    for (long m = 1; m <= n; ++m) {
      mpz_class a = m < n ? prev[m] * m : mpz_class(0);
      row[m] = a + prev[m - 1];
    }
    rows.push_back(std::move(row));
  }
  return rows[k];
}

std::shared_ptr<const std::vector<std::vector<mpz_class>>> phi_pi_powers(
    unsigned p, long deg) {
  using Table = std::vector<std::vector<mpz_class>>;
  static std::mutex mu;
  static std::map<std::pair<unsigned, long>, std::shared_ptr<const Table>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, deg);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<mpz_class> P(deg + 1, 0);
  for (long m = 1; m <= std::min<long>(p, deg); ++m) P[m] = binom(p, m);
  auto tab = std::make_shared<Table>();
  tab->push_back(std::vector<mpz_class>(deg + 1, 0));
  (*tab)[0][0] = 1;
  for (long k = 1; k <= deg; ++k) {
    const auto& prev = (*tab)[k - 1];
    std::vector<mpz_class> row(deg + 1, 0);
    for (long i = k - 1; i <= deg; ++i) {
      if (prev[i] == 0) continue;
      for (long j = 1; j <= static_cast<long>(p) && i + j <= deg; ++j)
        row[i + j] += prev[i] * P[j];
    }
    tab->push_back(std::move(row));
  }
  cache[key] = tab;
  return tab;
}

long tail_sweep(const PadicContext* ctx, const Tail& t, long from, long num,
                long den, long off) {
  if (t.is_exact()) return kInfPrec;
  if (t.is_unknown()) return -kInfPrec;
  long best = kInfPrec;
  long span = 64 * den * (t.growth + 2) / std::max(1L, num) + 64;
  for (long n = from + 1; n <= from + span; ++n) {
    long v = t.base - t.growth * ctx->flog(n) + (n * num) / den - off;
    best = std::min(best, v);
  }
  return best;
}

PSeries one_plus_pi_pow(const Padic& c, long deg) {
  const PadicContext* ctx = c.ctx();
  if (c.is_exact() && c.valuation() >= 0) {
    mpz_class n = c.to_signed_mpz();
    if (n >= 0 && n <= deg) {
      long e = n.get_si();
      std::vector<Padic> v;
      for (long m = 0; m <= e; ++m) v.push_back(Padic::exact(ctx, binom(e, m)));
      return PSeries(std::move(v), Tail::exact());
    }
  }
  if (!c.is_zero() && c.valuation() < 0)
    throw std::domain_error("(1+pi)^c needs c in Z_p");
  return PSeries(binomial_row(c, deg), Tail::bounded(0, 0));
}

PSeries log1p_series(const PadicContext* ctx, long deg) {
  std::vector<Padic> v;
  v.push_back(Padic::zero(ctx));
  for (long m = 1; m <= deg; ++m) {
    mpq_class q(m % 2 ? 1 : -1, m);
    q.canonicalize();
    v.push_back(Padic::from_rational(ctx, q));
  }
  return PSeries(std::move(v), Tail::bounded(0, 1));
}

PSeries psi_by_average(const PSeries& f) {
  if (!f.is_exact_poly())
    throw std::invalid_argument("average form of psi needs a polynomial");
  const PadicContext* ctx = f.ctx();
  long p = ctx->p();
  long d = f.deg();
  std::vector<CycloElt> h(d + 1, CycloElt::zero(ctx, 1));
  for (long a = 0; a < p; ++a) {
    CycloElt z = CycloElt::zeta_power(ctx, 1, a);
    CycloElt zm1 = z - CycloElt::one(ctx, 1);
    // powers of (zeta - 1) and of zeta
    std::vector<CycloElt> pw(d + 1, CycloElt::one(ctx, 1));
    std::vector<CycloElt> zp(d + 1, CycloElt::one(ctx, 1));
    for (long i = 1; i <= d; ++i) {
      pw[i] = pw[i - 1] * zm1;
      zp[i] = zp[i - 1] * z;
    }
    // f(zeta - 1 + zeta pi) = sum_m zeta^m pi^m sum_n f_n C(n,m) (zeta-1)^{n-m}
    for (long m = 0; m <= d; ++m) {
      CycloElt acc = CycloElt::zero(ctx, 1);
      for (long n = m; n <= d; ++n) {
        if (f[n].is_exact_zero()) continue;
        acc += pw[n - m] * (f[n] * Padic::exact(ctx, binom(n, m)));
      }
      h[m] += zp[m] * acc;
    }
  }
  std::vector<Padic> hv;
  Padic inv_p = Padic::p_power(ctx, -1);
  for (long m = 0; m <= d; ++m) {
    if (!h[m].lies_in_level(0))
      throw PrecisionError("descent failure in the average form of psi");
    hv.push_back(h[m].to_padic() * inv_p);
  }
  std::vector<Padic> b = to_x_basis(PSeries(hv, Tail::exact()));
  std::vector<Padic> g;
  for (long i = 0; i <= d; ++i) {
    if (i % p == 0) {
      g.push_back(b[i]);
    } else if (!b[i].is_zero()) {
      throw PrecisionError("descent failure in the average form of psi");
    }
  }
  return from_x_basis(g);
}

}  // namespace iwk
