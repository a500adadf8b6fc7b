// Copyright 2026 The iwk Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "iwk/report.hpp"
#include "iwk/suite.hpp"

using namespace iwk;

TEST_SUITE("report") {
  TEST_CASE("empty and single reports") {
    RunConfig cfg;
    Json r = make_report(cfg, {});
    CHECK(r["checks"].is_array());
    CHECK(r["checks"].empty());
    CHECK(r["summary"]["pass"] == 0);
    CHECK(r["summary"]["fail"] == 0);
    CheckResult ok{"x", "anchor", true, 1, 1, 30};
    r = make_report(cfg, {ok});
    CHECK(r["summary"]["pass"] == 1);
    CheckResult bad{"y", "anchor", false, 1, 2, 3};
    r = make_report(cfg, {ok, bad});
    CHECK(r["summary"]["fail"] == 1);
    const Json& c = r["checks"][1];
    std::vector<std::string> keys;
    for (auto it = c.begin(); it != c.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"id", "paper_anchor", "status", "lhs", "rhs",
                                           "precision_attained"});
    CHECK(c["status"] == "fail");
    CHECK(report_text(r).find("FAIL y") != std::string::npos);
  }

  TEST_CASE("p-adic digits are little-endian") {
    auto* ctx = PadicContext::get(5, 6);
    Json j = padic_json(Padic::exact(ctx, 7));
    CHECK(j["valuation"] == 0);
    CHECK(j["digits"][0] == 2);
    CHECK(j["digits"][1] == 1);
    CHECK(j["absprec"] == "exact");
    CHECK(padic_json(Padic::exact(ctx, 0))["valuation"].is_null());
    j = padic_json(Padic::from_int(ctx, 50));
    CHECK(j["valuation"] == 2);
    CHECK(j["digits"][0] == 2);
  }

  TEST_CASE("configuration") {
    RunConfig cfg;
    CHECK(cfg.p == 5);
    CHECK(cfg.N == 30);
    CHECK(cfg.D == 64);
    CHECK(cfg.DT == 32);
    CHECK(cfg.level == 3);
    CHECK_NOTHROW(validate(cfg));
    merge_json(cfg, Json{{"p", 7}, {"prec", 12}});
    CHECK(cfg.p == 7);
    CHECK(cfg.N == 12);
    RunConfig bad;
    bad.p = 9;
    CHECK_THROWS(validate(bad));
    bad = RunConfig{};
    bad.N = 3;
    CHECK_THROWS(validate(bad));
    bad = RunConfig{};
    bad.p = 2;
    CHECK_THROWS(validate(bad));
    RunConfig round;
    merge_json(round, to_json(cfg));
    CHECK(to_json(round) == to_json(cfg));
  }
}

TEST_SUITE("suite") {
  TEST_CASE("a wrong target is reported as a failure") {
    RunConfig cfg;
    KlParams kp;
    kp.jmax = 2;
    kp.target = [](long, long, long) { return mpq_class(1, 3); };
    auto r = suite_kubota_leopoldt(cfg, kp);
    REQUIRE(r.size() == 2);
    CHECK(!r[0].pass);
    CHECK(!r[1].pass);
    kp.target = {};
    for (const auto& c : suite_kubota_leopoldt(cfg, kp)) CHECK(c.pass);
  }

  TEST_CASE("reports are identical across runs and job counts") {
    RunConfig cfg;
    cfg.p = 3;
    cfg.N = 12;
    cfg.D = 24;
    cfg.DT = 12;
    cfg.level = 2;
    std::string a = make_report(cfg, run_suite(cfg)).dump();
    cfg.jobs = 3;
    auto checks = run_suite(cfg);
    cfg.jobs = 1;
    std::string b = make_report(cfg, checks).dump();
    CHECK(a == b);
    for (size_t i = 1; i < checks.size(); ++i) CHECK(checks[i - 1].id <= checks[i].id);
    for (const auto& c : checks) {
      INFO(c.id);
      CHECK(c.pass);
    }
  }
}
