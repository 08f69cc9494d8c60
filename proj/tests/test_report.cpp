#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "findep/report.hpp"

using namespace findep;

TEST_CASE("report documents are byte-identical for identical inputs") {
  IntegerTower t(3, 5, 3);
  IntEngine engine(t, Mode::RF, 3);
  RunConfig cfg;
  cfg.tower = "integer";
  cfg.depth = 3;
  cfg.seed = 42;

  auto make = [&]() {
    const auto res = search_max(engine, integer_ball(12), 4);
    ReportDoc doc;
    echo_config(doc, cfg, "search");
    report_search(doc, res, 4);
    return doc.str();
  };
  const std::string a = make();
  const std::string b = make();
  CHECK(a == b);
  CHECK(a.rfind("findep-report 1\n", 0) == 0);
  CHECK(a.find("command = search") != std::string::npos);
  CHECK(a.find("max_independence_set") != std::string::npos);
}

TEST_CASE("verdict rendering carries witnesses that re-validate") {
  IntegerTower t(3, 5, 3);
  IntEngine engine(t, Mode::RF, 3);
  const std::vector<long long> M{0, 15};
  const Verdict v = engine.is_independence_set(M);
  REQUIRE(v.status == Verdict::Status::independent);
  for (std::uint32_t mask = 0; mask < v.witnesses.size(); ++mask)
    CHECK(engine.validate(M, SignPattern::from_mask(mask, M.size()), v.witnesses[mask]));
  ReportDoc doc;
  report_verdict(doc, M, v);
  const std::string s = doc.str();
  CHECK(s.find("verdict = independent") != std::string::npos);
  CHECK(s.find("witness ++") != std::string::npos);
  CHECK(s.find("witness --") != std::string::npos);
}

TEST_CASE("pattern rendering") {
  SignPattern p = SignPattern::from_mask(0b101, 3);
  CHECK(render_pattern(p) == "+-+");
  CHECK(p.to_mask() == 0b101);
}
