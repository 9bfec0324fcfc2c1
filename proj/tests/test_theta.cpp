#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qbounds/graph.hpp"
#include "qbounds/theta.hpp"

using namespace qbounds;

namespace {

ExclusivityGraph cycle(int m) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < m; ++v) {
    labels.push_back("v" + std::to_string(v));
    edges.emplace_back(v, (v + 1) % m);
  }
  return ExclusivityGraph::from_edges(std::move(labels), edges);
}

ExclusivityGraph empty_graph(int m) {
  std::vector<std::string> labels;
  for (int v = 0; v < m; ++v) labels.push_back("v" + std::to_string(v));
  return ExclusivityGraph::from_edges(std::move(labels), {});
}

ExclusivityGraph complete_graph(int m) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < m; ++v) labels.push_back("v" + std::to_string(v));
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) edges.emplace_back(u, v);
  return ExclusivityGraph::from_edges(std::move(labels), edges);
}

double odd_cycle_theta(int m) {
  const double c = std::cos(std::numbers::pi / m);
  return m * c / (1.0 + c);
}

std::vector<std::pair<int, int>> edges_of(const ExclusivityGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.edge(u, v)) out.emplace_back(u, v);
  return out;
}

}  // namespace

TEST_CASE("empty and complete graphs") {
  for (int m : {1, 3, 7}) {
    const auto r = lovasz_theta(empty_graph(m), 1e-8);
    CHECK(r.value == doctest::Approx(double(m)).epsilon(1e-7));
  }
  for (int m : {2, 5, 9}) {
    const auto r = lovasz_theta(complete_graph(m), 1e-8);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("odd cycles match the closed form to 1e-6") {
  for (int m : {5, 7, 9}) {
    const auto r = lovasz_theta(cycle(m), 1e-8);
    CHECK(std::abs(r.value - odd_cycle_theta(m)) < 1e-6);
    CHECK(r.converged);
    CHECK(r.duality_gap < 1e-6);
  }
  CHECK(odd_cycle_theta(5) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("theta of the Sigma_2 support graph") {
  const auto r = lovasz_theta(sigma_support_graph(2), 1e-8);
  CHECK(std::abs(r.value - (2.0 + std::sqrt(2.0))) < 1e-5);
}

TEST_CASE("theta of the Sigma_3 support graph") {
  const auto r = lovasz_theta(sigma_support_graph(3), 1e-6);
  CHECK(std::abs(r.value - 2.0 * (2.0 + std::sqrt(2.0))) < 1e-3);
}

TEST_CASE("certified bracket contains the reported value") {
  const auto r = lovasz_theta(sigma_support_graph(2), 1e-8);
  CHECK(r.lower <= r.value);
  CHECK(r.value <= r.upper);
  CHECK(r.upper - r.lower == doctest::Approx(r.duality_gap));
  CHECK(r.duality_gap >= 0.0);
}

TEST_CASE("sandwich: alpha <= theta on assorted instances") {
  std::mt19937_64 rng(31);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 5 + int(rng() % 5);
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < m; ++v) labels.push_back("v" + std::to_string(v));
    for (int u = 0; u < m; ++u)
      for (int v = u + 1; v < m; ++v)
        if (coin(rng)) edges.emplace_back(u, v);
    const auto g = ExclusivityGraph::from_edges(std::move(labels), edges);
    const int alpha = independence_number(g).value;
    const auto theta = lovasz_theta(g, 1e-7);
    CHECK(double(alpha) <= theta.value + 1e-5);
    CHECK(theta.value <= double(m) + 1e-5);
  }
}

TEST_CASE("removing an edge never decreases theta") {
  std::mt19937_64 rng(37);
  std::bernoulli_distribution coin(0.5);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 8;
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < m; ++v) labels.push_back("v" + std::to_string(v));
    for (int u = 0; u < m; ++u)
      for (int v = u + 1; v < m; ++v)
        if (coin(rng)) edges.emplace_back(u, v);
    if (edges.empty()) continue;
    const auto g = ExclusivityGraph::from_edges(labels, edges);
    const double base = lovasz_theta(g, 1e-7).value;
    auto fewer = edges;
    fewer.erase(fewer.begin() + long(rng() % fewer.size()));
    const auto g2 = ExclusivityGraph::from_edges(labels, fewer);
    const double relaxed = lovasz_theta(g2, 1e-7).value;
    CHECK(relaxed >= base - 1e-5);
    ++checked;
  }
  CHECK(checked >= 90);
}

TEST_CASE("product identity on vertex-transitive graphs") {
  const auto c5 = product_identity_check(cycle(5), 1e-4);
  CHECK(c5.within_tolerance);
  CHECK(c5.theta == doctest::Approx(std::sqrt(5.0)).epsilon(1e-5));
  CHECK(c5.theta_complement == doctest::Approx(std::sqrt(5.0)).epsilon(1e-5));

  const auto g2 = product_identity_check(sigma_support_graph(2), 1e-4);
  CHECK(g2.within_tolerance);
  CHECK(g2.theta_complement ==
        doctest::Approx(8.0 - 4.0 * std::sqrt(2.0)).epsilon(1e-4));

  const auto g3 = product_identity_check(sigma_support_graph(3), 1e-3);
  CHECK(g3.within_tolerance);
}

TEST_CASE("product identity rejects intransitive graphs") {
  const auto p3 = ExclusivityGraph::from_edges({"a", "b", "c"}, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(product_identity_check(p3, 1e-3), std::invalid_argument);
}

TEST_CASE("projection method cross-validates the interior point") {
  for (const auto* name : {"c5", "sigma2"}) {
    const auto g = std::string(name) == "c5" ? cycle(5) : sigma_support_graph(2);
    const double ipm = lovasz_theta_ipm(g, 1e-8).value;
    const auto proj = lovasz_theta_projection(g, 1e-4);
    CHECK(std::abs(proj.value - ipm) < 5e-3);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(lovasz_theta(cycle(5), 1e-12), std::invalid_argument);
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < 300; ++v) labels.push_back("v" + std::to_string(v));
  const auto big = ExclusivityGraph::from_edges(std::move(labels), edges);
  CHECK_THROWS_AS(lovasz_theta(big, 1e-6), std::invalid_argument);
}

TEST_CASE("theta via explicit edge list equals theta via events") {
  const auto g = sigma_support_graph(2);
  const auto rebuilt = ExclusivityGraph::from_edges(g.labels(), edges_of(g));
  const double a = lovasz_theta(g, 1e-7).value;
  const double b = lovasz_theta(rebuilt, 1e-7).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
}
