#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "fansig/charclasses.hpp"
#include "fansig/io.hpp"

using namespace fansig;

namespace {

void expect_parse_error(const std::string& text, const std::string& hint) {
  try {
    parse_fan_text(text);
    INFO("input ", text);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    INFO("detail ", e.what());
    CHECK(std::string(e.what()).find(hint) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("fan serialization round-trips bit-exactly") {
  for (const char* name :
       {"P0", "P1", "P2", "P3", "P1xP1", "BlP2", "BlP1xP1", "P1xP2"}) {
    const Fan fan = catalog(name);
    const std::string text = fan_to_json(fan).dump();
    const Fan reparsed = parse_fan_text(text);
    INFO("fan ", name);
    CHECK(same_fan(fan, reparsed));
    CHECK(fan_to_json(reparsed).dump() == text);
  }
}

TEST_CASE("parsing accepts unsorted cone listings") {
  const Fan fan = parse_fan_text(
      R"({"rank":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[1,0],[2,1],[0,2]]})");
  CHECK(same_fan(fan, catalog("P2")));
}

TEST_CASE("parse diagnostics name the offending field") {
  expect_parse_error("{nope", "parse error");
  expect_parse_error("[1,2,3]", "top level");
  expect_parse_error(R"({"rank":2,"rays":[[1,0]]})", "max_cones: missing");
  expect_parse_error(
      R"({"rank":-1,"rays":[],"max_cones":[]})", "rank: must be nonnegative");
  expect_parse_error(
      R"({"rank":2,"rays":[[1,0],[0,1,3]],"max_cones":[[0,1]]})",
      "exactly 2 coordinates");
  expect_parse_error(
      R"({"rank":2,"rays":[[1,"x"]],"max_cones":[[0]]})",
      "rays[0][1]: expected an integer");
  expect_parse_error(
      R"({"rank":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,7]]})",
      "ray index 7 out of range");
  expect_parse_error(
      R"({"rank":1,"rays":[[1],[-1]],"max_cones":"all"})",
      "max_cones: expected an array");
}

TEST_CASE("semantic violations keep their own error codes") {
  try {
    parse_fan_text(
        R"({"rank":2,"rays":[[2,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]})");
    FAIL("expected NonPrimitiveRay");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPrimitiveRay);
  }
}

TEST_CASE("rational JSON values") {
  CHECK(rational_to_json(Rational(5)) == Json(5));
  CHECK(rational_to_json(Rational(-3)) == Json(-3));
  CHECK(rational_to_json(Rational::parse("22/7")) == Json("22/7"));
  CHECK(rational_to_json(Rational::parse("-1/720")) == Json("-1/720"));
  // Integers beyond a machine word fall back to the string form.
  const Rational big = pow(Rational(10), 25);
  CHECK(rational_to_json(big) == Json(big.str()));
}

TEST_CASE("theorem reports serialize with ordered fields") {
  SUBCASE("hypothesis failure carries the boolean flag") {
    const Json doc =
        theorem_report_to_json(leung_reiner_certificate(catalog("P2")));
    CHECK(doc["locally_convex"] == Json(false));
    CHECK(doc["status"] == Json("hypothesis_failed"));
    CHECK(doc["pass"] == Json(false));
    CHECK_FALSE(doc.contains("terms"));
  }

  SUBCASE("term table appears for a passing certificate") {
    const Json doc =
        theorem_report_to_json(leung_reiner_certificate(catalog("BlP1xP1")));
    CHECK(doc["locally_convex"] == Json(true));
    CHECK(doc["signature"] == Json(-1));
    CHECK(doc["pass"] == Json(true));
    REQUIRE(doc["terms"].size() == 5);
    CHECK(doc["terms"][0].contains("rays"));
    CHECK(doc["terms"][0].contains("exponents"));
    CHECK(doc["terms"][0].contains("value"));
    CHECK(doc["terms"][0].contains("spans_cone"));
  }

  SUBCASE("identical inputs give identical bytes") {
    const Json a =
        theorem_report_to_json(signature_theorem_check(catalog("P1xP1")));
    const Json b =
        theorem_report_to_json(signature_theorem_check(catalog("P1xP1")));
    CHECK(a.dump() == b.dump());
  }
}
