#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbounds/report.hpp"

using namespace qbounds;

TEST_CASE("quantize keeps nine significant digits") {
  CHECK(quantize(3.141592653589793) == doctest::Approx(3.14159265).epsilon(1e-12));
  CHECK(quantize(2.0) == 2.0);
  CHECK(quantize(-0.000123456789123) == doctest::Approx(-0.000123456789).epsilon(1e-15));
}

TEST_CASE("sigma json shape") {
  const auto doc = sigma_json(build_sigma(2));
  CHECK(doc.at("n") == 2);
  CHECK(doc.at("terms").size() == 4);
  CHECK(doc.at("support").size() == 8);
  CHECK(doc.at("terms")[0].contains("context"));
  CHECK(doc.at("terms")[0].contains("sign"));
}

TEST_CASE("verdict json names the failed check") {
  auto family = base_family_n2();
  family.sets[0].product_events.pop_back();
  const auto verdict = verify_family(family, build_sigma(2));
  const auto doc = verdict_json(verdict);
  CHECK_FALSE(doc.at("all_passed").get<bool>());
  CHECK(doc.at("failed_check") == "set_sizes");
  CHECK_FALSE(doc.contains("derived_bound"));
}

TEST_CASE("bounds report for n=2 matches every closed form") {
  const auto r = compute_bounds(2);
  CHECK(r.complete);
  CHECK(r.all_match);
  REQUIRE(r.local);
  CHECK(r.local->sigma == 3);
  REQUIRE(r.theta);
  CHECK(std::abs(r.theta->value - (2.0 + std::sqrt(2.0))) < 1e-5);
  REQUIRE(r.quantum_sigma);
  CHECK(std::abs(*r.quantum_sigma - (2.0 + std::sqrt(2.0))) < 1e-4);
  REQUIRE(r.ns_sigma);
  CHECK(*r.ns_sigma == 4.0);
}

TEST_CASE("skipping a section marks the report incomplete") {
  const auto r = compute_bounds(2, {"quantum"});
  CHECK_FALSE(r.complete);
  CHECK_FALSE(r.quantum);
  const auto doc = bounds_json(r);
  CHECK_FALSE(doc.contains("quantum"));
  CHECK_FALSE(doc.at("complete").get<bool>());
}

TEST_CASE("bounds json serialization is byte-stable") {
  const auto a = bounds_json(compute_bounds(2)).dump(2);
  const auto b = bounds_json(compute_bounds(2)).dump(2);
  CHECK(a == b);
}

TEST_CASE("csv has a header and one data row") {
  const auto text = bounds_csv(compute_bounds(2, {"quantum"}));
  const auto newline = text.find('\n');
  REQUIRE(newline != std::string::npos);
  CHECK(text.substr(0, 1) == "n");
  const auto row = text.substr(newline + 1);
  CHECK(row.find("3.41421356") != std::string::npos);  // theta column
  CHECK(row.find("true") != std::string::npos);
}

TEST_CASE("full report composes bounds with family verification") {
  const auto doc = full_report_json(2, {}, 0);
  CHECK(doc.at("all_match").get<bool>());
  CHECK(doc.at("complete").get<bool>());
  CHECK(doc.at("family").at("all_passed").get<bool>());
  CHECK(doc.at("bounds").at("all_match").get<bool>());
}

TEST_CASE("graph json carries invariants when requested") {
  const auto g = sigma_support_graph(2);
  const auto doc = graph_json(g, true);
  CHECK(doc.at("vertices").size() == 8);
  CHECK(doc.at("alpha") == 3);
  CHECK(doc.at("vertex_transitive") == true);
  const auto bare = graph_json(g, false);
  CHECK_FALSE(bare.contains("alpha"));
}
