#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbounds/scenario.hpp"
#include "qbounds/sigma.hpp"

namespace qbounds {

/// Undirected exclusivity graph over event tokens, stored as dense bit rows.
class ExclusivityGraph {
 public:
  /// Builds the graph of a set of events sharing one scenario; edge (u,v)
  /// iff exclusive(u, v). Vertices are sorted by token.
  static ExclusivityGraph from_events(std::span<const Event> events);
  static ExclusivityGraph from_edges(std::vector<std::string> labels,
                                     const std::vector<std::pair<int, int>>& edges);

  int order() const { return m_; }
  int words() const { return words_; }
  bool edge(int u, int v) const {
    return (adj_[size_t(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  const uint64_t* row(int u) const { return adj_.data() + size_t(u) * words_; }
  int degree(int u) const;
  long long edge_count() const;
  const std::vector<std::string>& labels() const { return labels_; }

  ExclusivityGraph complement() const;

 private:
  ExclusivityGraph(int m, std::vector<std::string> labels);
  void set_edge(int u, int v);
  int m_ = 0;
  int words_ = 0;
  std::vector<uint64_t> adj_;
  std::vector<std::string> labels_;
};

/// G over the Sigma_n support events.
ExclusivityGraph sigma_support_graph(int n);

/// True iff the automorphism group acts transitively on the vertices,
/// decided by colour refinement plus a backtracking automorphism search.
bool is_vertex_transitive(const ExclusivityGraph& g);

struct AlphaResult {
  int value = 0;
  std::vector<int> witness;  // an independent set of size `value`
  bool exact = true;
  int lower = 0, upper = 0;  // bracket when not exact
};

/// Exact independence number by branch and bound with a greedy clique-cover
/// bound; exact up to 512 vertices, bracket beyond.
AlphaResult independence_number(const ExclusivityGraph& g);

std::string to_dot(const ExclusivityGraph& g);

}  // namespace qbounds
