// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_SUITE_HPP
#define IWK_SUITE_HPP

#include <functional>
#include <vector>

#include "iwk/report.hpp"

namespace iwk {

// Exact rational the regulator value at chi^j should equal.
using KlTarget = std::function<mpq_class(long p, long c, long j)>;

struct KlParams {
  long c = 2;
  long jmax = 6;
  long min_digits = -1;  // default N - 5
  KlTarget target;       // default: library Bernoulli numbers
};
std::vector<CheckResult> suite_kubota_leopoldt(const RunConfig& cfg, const KlParams& kp = {});

struct IdentityParams {
  int trials = 100;
  int multisets = 20;
};
std::vector<CheckResult> suite_identities(const RunConfig& cfg, const IdentityParams& ip = {});

std::vector<CheckResult> suite_factorials(const RunConfig& cfg, int trials = 200,
                                          long slack = 8);
std::vector<CheckResult> suite_gauss(const RunConfig& cfg);
std::vector<CheckResult> suite_fudge(const RunConfig& cfg, long hmax = 5, long slack = 6);
std::vector<CheckResult> suite_omega(const RunConfig& cfg, int trials = 50, long hmax = 3);
std::vector<CheckResult> suite_derivative(const RunConfig& cfg, int trials = 50);
std::vector<CheckResult> suite_crystalline(const RunConfig& cfg, int trials = 50);
std::vector<CheckResult> suite_twist_ladder(const RunConfig& cfg, int trials = 20,
                                            long rmax = 3);

// Every family at default sizes, checks ordered by id.  Families run
// on up to cfg.jobs threads.
std::vector<CheckResult> run_suite(const RunConfig& cfg);

// Digits to which two series agree on coefficients 0..d: the least
// valuation of a nonzero difference, or the attained precision.
long series_agreement(const PSeries& a, const PSeries& b, long d);
// Relative digits of agreement of a against b.
long relative_agreement(const CycloElt& a, const CycloElt& b);

}  // namespace iwk

#endif
