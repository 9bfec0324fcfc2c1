#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qbounds/graph.hpp"
#include "qbounds/models.hpp"

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

ExclusivityGraph path3() {
  return ExclusivityGraph::from_edges({"a", "b", "c"}, {{0, 1}, {1, 2}});
}

ExclusivityGraph random_graph(int m, double density, std::mt19937_64& rng) {
  std::vector<std::string> labels;
  for (int v = 0; v < m; ++v) labels.push_back("v" + std::to_string(v));
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return ExclusivityGraph::from_edges(std::move(labels), edges);
}

// independent oracle for the exclusivity rule on single-city events: some
// party measured with the same setting but opposite outcomes
bool exclusive_oracle(const Event& a, const Event& b) {
  const int n = a.scenario().n;
  for (int i = 0; i < n; ++i) {
    const int xa = (a.settings_bits() >> i) & 1, xb = (b.settings_bits() >> i) & 1;
    const int oa = (a.outcomes_bits() >> i) & 1, ob = (b.outcomes_bits() >> i) & 1;
    if (xa == xb && oa != ob) return true;
  }
  return false;
}

int alpha_bruteforce(const ExclusivityGraph& g) {
  const int m = g.order();
  int best = 0;
  for (uint32_t subset = 0; subset < (1u << m); ++subset) {
    bool independent = true;
    for (int u = 0; u < m && independent; ++u)
      for (int v = u + 1; v < m && independent; ++v)
        if ((subset >> u) & (subset >> v) & 1u)
          if (g.edge(u, v)) independent = false;
    if (independent) best = std::max(best, std::popcount(subset));
  }
  return best;
}

bool transitive_bruteforce(const ExclusivityGraph& g) {
  const int m = g.order();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> reachable(m, 0);
  reachable[0] = 1;
  do {
    bool automorphism = true;
    for (int u = 0; u < m && automorphism; ++u)
      for (int v = u + 1; v < m && automorphism; ++v)
        if (g.edge(u, v) != g.edge(perm[u], perm[v])) automorphism = false;
    if (automorphism) reachable[perm[0]] = 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::all_of(reachable.begin(), reachable.end(), [](char c) { return c; });
}

}  // namespace

TEST_CASE("support graph of Sigma_2: structure computed two ways") {
  const auto g = sigma_support_graph(2);
  REQUIRE(g.order() == 8);
  const auto expr = build_sigma(2);
  // oracle: rebuild adjacency from the raw rule and compare
  std::vector<Event> events(expr.support().begin(), expr.support().end());
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.token() < b.token(); });
  long long oracle_edges = 0;
  for (size_t i = 0; i < events.size(); ++i)
    for (size_t j = i + 1; j < events.size(); ++j) {
      const bool expected = exclusive_oracle(events[i], events[j]);
      CHECK(g.edge(int(i), int(j)) == expected);
      oracle_edges += expected;
    }
  CHECK(g.edge_count() == oracle_edges);
  // regular of the oracle-computed degree
  const int degree = g.degree(0);
  for (int v = 0; v < 8; ++v) CHECK(g.degree(v) == degree);
  CHECK(degree == 3);
}

TEST_CASE("single event gives a one-vertex graph") {
  const Scenario sc = single_scenario(2);
  const std::vector<Event> one = {Event::parse(sc, "0,0|0,0")};
  const auto g = ExclusivityGraph::from_events(one);
  CHECK(g.order() == 1);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("one context's outcomes form a complete graph") {
  const Scenario sc = single_scenario(2);
  std::vector<Event> events;
  for (uint32_t b = 0; b < 4; ++b) events.push_back(Event::product(sc, 0b01, b));
  const auto g = ExclusivityGraph::from_events(events);
  CHECK(g.order() == 4);
  CHECK(g.edge_count() == 6);
}

TEST_CASE("duplicate events are rejected") {
  const Scenario sc = single_scenario(2);
  const std::vector<Event> dup = {Event::parse(sc, "0,0|0,0"),
                                  Event::parse(sc, "0,0|0,0")};
  CHECK_THROWS_AS(ExclusivityGraph::from_events(dup), std::invalid_argument);
}

TEST_CASE("complement is an involution and splits degrees") {
  const auto g = sigma_support_graph(2);
  const auto gc = g.complement();
  for (int v = 0; v < 8; ++v) CHECK(gc.degree(v) == 8 - 1 - g.degree(v));
  const auto back = gc.complement();
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v)
      if (u != v) CHECK(back.edge(u, v) == g.edge(u, v));

  const auto k4 = ExclusivityGraph::from_edges(
      {"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(k4.complement().edge_count() == 0);
  CHECK(k4.complement().complement().edge_count() == 6);
}

TEST_CASE("vertex transitivity: named instances") {
  CHECK(is_vertex_transitive(cycle(5)));
  CHECK_FALSE(is_vertex_transitive(path3()));
  CHECK(is_vertex_transitive(sigma_support_graph(2)));
  CHECK(is_vertex_transitive(sigma_support_graph(3)));
}

TEST_CASE("vertex transitivity agrees with brute force on small graphs") {
  std::mt19937_64 rng(23);
  int transitive_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 4 + int(rng() % 4);  // 4..7
    const auto g = random_graph(m, 0.4, rng);
    const bool expected = transitive_bruteforce(g);
    transitive_seen += expected;
    CHECK(is_vertex_transitive(g) == expected);
  }
  // structured positives, since random graphs are rarely transitive
  CHECK(is_vertex_transitive(cycle(6)));
  CHECK(is_vertex_transitive(cycle(7)));
  CHECK(is_vertex_transitive(cycle(8)));
  const auto k33 = ExclusivityGraph::from_edges(
      {"a", "b", "c", "d", "e", "f"},
      {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  CHECK(is_vertex_transitive(k33));
  CHECK(transitive_bruteforce(k33));
}

TEST_CASE("independence number: named instances") {
  CHECK(independence_number(cycle(5)).value == 2);
  CHECK(independence_number(sigma_support_graph(2)).value == 3);
  CHECK(independence_number(sigma_support_graph(3)).value == 6);
}

TEST_CASE("independence number of the Sigma_2 graph by brute force") {
  CHECK(alpha_bruteforce(sigma_support_graph(2)) == 3);
}

TEST_CASE("independence number matches brute force on random graphs") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 5 + int(rng() % 8);  // 5..12
    const auto g = random_graph(m, 0.35, rng);
    const auto r = independence_number(g);
    CHECK(r.exact);
    CHECK(r.value == alpha_bruteforce(g));
    // witness is edge-free and of the claimed size
    CHECK(int(r.witness.size()) == r.value);
    for (size_t i = 0; i < r.witness.size(); ++i)
      for (size_t j = i + 1; j < r.witness.size(); ++j)
        CHECK_FALSE(g.edge(r.witness[i], r.witness[j]));
  }
}

TEST_CASE("alpha equals the local bound for n = 2, 3, 4") {
  for (int n = 2; n <= 4; ++n) {
    const auto g = sigma_support_graph(n);
    const auto alpha = independence_number(g);
    CHECK(alpha.exact);
    CHECK(alpha.value == local_bound(n).sigma);
  }
}

TEST_CASE("dot export lists every vertex and edge") {
  const auto g = sigma_support_graph(2);
  const std::string dot = to_dot(g);
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("0,0|0,0") != std::string::npos);
  size_t count = 0;
  for (size_t pos = dot.find("--"); pos != std::string::npos; pos = dot.find("--", pos + 1))
    ++count;
  CHECK(count == size_t(g.edge_count()));
}
