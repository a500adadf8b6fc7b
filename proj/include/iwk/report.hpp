// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef IWK_REPORT_HPP
#define IWK_REPORT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "iwk/cyclotomic.hpp"
#include "iwk/epsilon.hpp"
#include "iwk/padic.hpp"
#include "iwk/series.hpp"
#include "iwk/unramified.hpp"

namespace iwk {

using Json = nlohmann::ordered_json;

struct RunConfig {
  unsigned p = 5;
  long N = 30;
  long D = 64;
  long DT = 32;
  int level = 3;
  std::uint64_t seed = 1;
  std::string format = "json";
  int jobs = 1;
};

// Throws std::invalid_argument on an unusable configuration.
void validate(const RunConfig& cfg);
Json to_json(const RunConfig& cfg);
// Overrides fields present in j.
void merge_json(RunConfig& cfg, const Json& j);

struct CheckResult {
  std::string id;
  std::string paper_anchor;
  bool pass = false;
  Json lhs;
  Json rhs;
  long precision_attained = 0;
};

// {valuation, digits (little-endian base p), absprec}
Json padic_json(const Padic& x);
Json cyclo_json(const CycloElt& x);
Json unram_json(const UnramifiedElt& x);
Json rational_json(const mpq_class& q);
// First `shown` coefficients and the stored degree.
Json series_json(const PSeries& f, long shown = 8);
Json eps_json(const EpsFactor& e);

Json check_json(const CheckResult& r);
Json make_report(const RunConfig& cfg, const std::vector<CheckResult>& checks);
// Human-readable rendering of a report.
std::string report_text(const Json& report);

}  // namespace iwk

#endif
