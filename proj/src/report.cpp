// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "iwk/report.hpp"

#include <sstream>
#include <stdexcept>

namespace iwk {

namespace {

bool is_odd_prime(unsigned p) {
  if (p < 3 || p % 2 == 0) return false;
  for (unsigned d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!is_odd_prime(cfg.p)) throw std::invalid_argument("p must be an odd prime");
  if (cfg.N < 4 || cfg.D < 4 || cfg.DT < 4)
    throw std::invalid_argument("precision and degrees must be >= 4");
  if (cfg.level < 0) throw std::invalid_argument("level must be >= 0");
  if (cfg.format != "json" && cfg.format != "text")
    throw std::invalid_argument("format must be json or text");
  if (cfg.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

Json to_json(const RunConfig& cfg) {
  Json j;
  j["p"] = cfg.p;
  j["N"] = cfg.N;
  j["D"] = cfg.D;
  j["D_T"] = cfg.DT;
  j["level"] = cfg.level;
  j["seed"] = cfg.seed;
  return j;
}

void merge_json(RunConfig& cfg, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "p") cfg.p = it->get<unsigned>();
    else if (k == "N" || k == "prec") cfg.N = it->get<long>();
    else if (k == "D" || k == "deg") cfg.D = it->get<long>();
    else if (k == "D_T" || k == "tdeg") cfg.DT = it->get<long>();
    else if (k == "level") cfg.level = it->get<int>();
    else if (k == "seed") cfg.seed = it->get<std::uint64_t>();
    else if (k == "format") cfg.format = it->get<std::string>();
    else if (k == "jobs") cfg.jobs = it->get<int>();
    else throw std::invalid_argument("unknown config key: " + k);
  }
}

Json padic_json(const Padic& x) {
  Json j;
  j["valuation"] = x.is_zero() && x.is_exact() ? Json(nullptr) : Json(x.valuation());
  // exact values show N digits
  Padic shown = x.is_exact() && !x.is_zero() ? x.capped(x.valuation() + x.ctx()->N()) : x;
  j["digits"] = x.is_zero() ? std::vector<unsigned>{} : shown.unit_digits();
  j["absprec"] = x.is_exact() ? Json("exact") : Json(x.absprec());
  return j;
}

Json cyclo_json(const CycloElt& x) {
  Json j;
  j["level"] = x.level();
  Json c = Json::array();
  for (const auto& a : x.coords()) c.push_back(padic_json(a));
  j["coords"] = c;
  return j;
}

Json unram_json(const UnramifiedElt& x) {
  Json j;
  j["f"] = x.f();
  Json c = Json::array();
  for (const auto& a : x.coords()) c.push_back(padic_json(a));
  j["coords"] = c;
  return j;
}

Json rational_json(const mpq_class& q) { return q.get_str(); }

Json series_json(const PSeries& f, long shown) {
  Json j;
  j["degree"] = f.deg();
  Json c = Json::array();
  for (long i = 0; i <= std::min(f.deg(), shown - 1); ++i) c.push_back(padic_json(f[i]));
  j["coeffs"] = c;
  return j;
}

Json eps_json(const EpsFactor& e) {
  Json j;
  j["cyclo_part"] = cyclo_json(e.cyclo);
  j["p_power"] = e.p_power;
  j["unram_part"] = e.unram ? unram_json(*e.unram) : Json("1");
  j["t_exponent"] = e.t_exp;
  return j;
}

Json check_json(const CheckResult& r) {
  Json j;
  j["id"] = r.id;
  j["paper_anchor"] = r.paper_anchor;
  j["status"] = r.pass ? "pass" : "fail";
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["precision_attained"] = r.precision_attained;
  return j;
}

Json make_report(const RunConfig& cfg, const std::vector<CheckResult>& checks) {
  Json j;
  j["config"] = to_json(cfg);
  Json arr = Json::array();
  long pass = 0, fail = 0;
  for (const auto& r : checks) {
    arr.push_back(check_json(r));
    (r.pass ? pass : fail) += 1;
  }
  j["checks"] = arr;
  j["summary"] = {{"pass", pass}, {"fail", fail}};
  return j;
}

std::string report_text(const Json& report) {
  std::ostringstream os;
  if (report.contains("config")) os << "config " << report["config"].dump() << "\n";
  if (report.contains("checks")) {
    for (const auto& c : report["checks"]) {
      os << (c["status"] == "pass" ? "PASS " : "FAIL ") << c["id"].get<std::string>()
         << "  [" << c["paper_anchor"].get<std::string>() << "]  precision "
         << c["precision_attained"].dump() << "\n";
    }
  }
  if (report.contains("summary"))
    os << "summary pass=" << report["summary"]["pass"].dump()
       << " fail=" << report["summary"]["fail"].dump() << "\n";
  for (auto it = report.begin(); it != report.end(); ++it) {
    if (it.key() == "config" || it.key() == "checks" || it.key() == "summary") continue;
    os << it.key() << " " << it.value().dump() << "\n";
  }
  return os.str();
}

}  // namespace iwk
