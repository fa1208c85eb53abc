#include "doctest.h"

#include <set>
#include <string>

#include "conelab/suites.hpp"
#include "conelab/version.hpp"
#include "json.hpp"

using namespace conelab;
using nlohmann::json;

TEST_CASE("bundle report is byte-identical across thread counts") {
  SuiteReport one = suite_all(42, 1);
  SuiteReport eight = suite_all(42, 8);
  CHECK(one.pass);
  CHECK(one.json == eight.json);
  CHECK(one.total == eight.total);
  CHECK(one.failed == eight.failed);
}

TEST_CASE("bundle report envelope carries config and summary") {
  SuiteReport rep = suite_all(42, 2);
  const json doc = json::parse(rep.json);
  CHECK(doc.at("tool_version").get<std::string>() ==
        std::string(kToolName) + " " + kToolVersion);
  CHECK(doc.at("config").at("command").get<std::string>() == "verify all");
  CHECK(doc.at("config").at("seed").get<uint64_t>() == 42);
  const json& summary = doc.at("summary");
  CHECK(summary.at("total").get<uint64_t>() == rep.total);
  CHECK(summary.at("failed").get<uint64_t>() == rep.failed);
  CHECK(summary.at("pass").get<bool>() == rep.pass);
  CHECK(doc.at("suites").is_object());
  const std::set<std::string> expected = {"classical",      "intertwine_rank2",
                                          "laplace_rank1",  "laplace_rank2",
                                          "recursion_rank1", "recursion_rank2"};
  std::set<std::string> got;
  for (auto it = doc.at("suites").begin(); it != doc.at("suites").end(); ++it)
    got.insert(it.key());
  for (const std::string& name : expected) CHECK(got.count(name) == 1);

  // Suite totals roll up into the bundle summary.
  uint64_t total = 0, failed = 0;
  for (const auto& [_, suite] : doc.at("suites").items()) {
    total += suite.at("summary").at("total").get<uint64_t>();
    failed += suite.at("summary").at("failed").get<uint64_t>();
  }
  CHECK(total == rep.total);
  CHECK(failed == rep.failed);
}

TEST_CASE("expansion cases carry the documented fields") {
  SuiteReport rep = suite_recursion(2, Rational::parse("5/2"), 2, 1);
  CHECK(rep.pass);
  const json doc = json::parse(rep.json);
  CHECK(doc.at("config").at("command").get<std::string>() == "verify recursion");
  REQUIRE(doc.at("cases").is_array());
  REQUIRE(!doc.at("cases").empty());
  bool saw_rel1 = false, saw_rel2 = false, saw_rel3 = false;
  for (const json& c : doc.at("cases")) {
    CHECK(c.at("pass").get<bool>());
    CHECK(c.at("residual_zero").get<bool>());
    CHECK(c.at("support_ok").get<bool>());
    CHECK(c.at("coeffs_ok").get<bool>());
    CHECK(c.contains("m"));
    CHECK(c.contains("nu"));
    const int rel = c.at("relation").get<int>();
    REQUIRE(c.at("coefficients").is_array());
    for (const json& coeff : c.at("coefficients")) {
      CHECK(coeff.contains("target_m"));
      CHECK(coeff.contains("value"));
      CHECK(coeff.contains("paper_form_match"));
      CHECK(coeff.contains("half_form_match"));
    }
    if (rel == 1) {
      saw_rel1 = true;
      CHECK(c.contains("eigenvalue"));
    } else if (rel == 2) {
      saw_rel2 = true;
      const std::string form = c.at("matched_form").get<std::string>();
      CHECK((form == "paper_form" || form == "half_form" || form == "both"));
    } else {
      saw_rel3 = true;
    }
  }
  CHECK(saw_rel1);
  CHECK(saw_rel2);
  CHECK(saw_rel3);
  const json& summary = doc.at("summary");
  CHECK(summary.at("matched_form_consistent").get<bool>());
}

TEST_CASE("classical suite reports exact and numeric agreement per degree") {
  SuiteReport rep = suite_classical(4, Rational::parse("7/3"));
  CHECK(rep.pass);
  CHECK(rep.failed == 0);
  const json doc = json::parse(rep.json);
  for (const json& c : doc.at("cases")) CHECK(c.at("pass").get<bool>());
  CHECK(doc.at("summary").at("total").get<uint64_t>() == rep.total);
}

TEST_CASE("laplace and intertwine suites parse and pass") {
  SuiteReport lap = suite_laplace(2, Rational(3), Signature::parse("1,0"),
                                  {1.5, 2.0, 3.0}, 48);
  CHECK(lap.pass);
  const json ldoc = json::parse(lap.json);
  for (const json& c : ldoc.at("cases")) {
    CHECK(c.at("pass").get<bool>());
    CHECK(c.contains("s"));
    CHECK(c.contains("rel_error"));
    CHECK(c.contains("expected"));
  }

  SuiteReport inter = suite_intertwine(2, Rational(3), Signature::parse("1,0"),
                                       "all", 42, 48);
  CHECK(inter.pass);
  const json idoc = json::parse(inter.json);
  std::set<std::string> kinds;
  for (const json& c : idoc.at("cases")) {
    CHECK(c.at("pass").get<bool>());
    kinds.insert(c.at("case").get<std::string>());
    REQUIRE(c.at("points").is_array());
    CHECK(c.at("points").size() == 3);
  }
  CHECK(kinds == std::set<std::string>{"intertwine kC", "intertwine pMinus",
                                       "intertwine pPlus"});
}
