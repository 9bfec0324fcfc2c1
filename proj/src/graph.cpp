#include "qbounds/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qbounds {

ExclusivityGraph::ExclusivityGraph(int m, std::vector<std::string> labels)
    : m_(m), words_((m + 63) / 64), adj_(size_t(m) * ((m + 63) / 64), 0),
      labels_(std::move(labels)) {}

void ExclusivityGraph::set_edge(int u, int v) {
  adj_[size_t(u) * words_ + (v >> 6)] |= 1ull << (v & 63);
  adj_[size_t(v) * words_ + (u >> 6)] |= 1ull << (u & 63);
}

ExclusivityGraph ExclusivityGraph::from_events(std::span<const Event> events) {
  if (events.empty()) throw std::invalid_argument("graph requires at least one event");
  std::vector<Event> sorted(events.begin(), events.end());
  for (const auto& e : sorted)
    if (e.scenario() != sorted.front().scenario())
      throw std::invalid_argument("events must share a scenario");
  std::sort(sorted.begin(), sorted.end(),
            [](const Event& a, const Event& b) { return a.token() < b.token(); });
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) throw std::invalid_argument("duplicate event");

  std::vector<std::string> labels;
  labels.reserve(sorted.size());
  for (const auto& e : sorted) labels.push_back(e.token());
  ExclusivityGraph g(static_cast<int>(sorted.size()), std::move(labels));
  for (int u = 0; u < g.m_; ++u)
    for (int v = u + 1; v < g.m_; ++v)
      if (exclusive(sorted[u], sorted[v])) g.set_edge(u, v);
  return g;
}

ExclusivityGraph ExclusivityGraph::from_edges(std::vector<std::string> labels,
                                              const std::vector<std::pair<int, int>>& edges) {
  const int m = static_cast<int>(labels.size());
  if (m == 0) throw std::invalid_argument("graph requires at least one vertex");
  ExclusivityGraph g(m, std::move(labels));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= m || v >= m || u == v)
      throw std::invalid_argument("bad edge");
    g.set_edge(u, v);
  }
  return g;
}

int ExclusivityGraph::degree(int u) const {
  int d = 0;
  for (int w = 0; w < words_; ++w) d += std::popcount(row(u)[w]);
  return d;
}

long long ExclusivityGraph::edge_count() const {
  long long total = 0;
  for (int u = 0; u < m_; ++u) total += degree(u);
  return total / 2;
}

ExclusivityGraph ExclusivityGraph::complement() const {
  ExclusivityGraph g(m_, labels_);
  for (int u = 0; u < m_; ++u)
    for (int v = u + 1; v < m_; ++v)
      if (!edge(u, v)) g.set_edge(u, v);
  return g;
}

ExclusivityGraph sigma_support_graph(int n) {
  const SigmaExpression expr = build_sigma(n);
  return ExclusivityGraph::from_events(expr.support());
}

namespace {

// Colour refinement: repeatedly recolour each vertex by (colour, sorted
// multiset of neighbour colours) until stable. Both colourings of a search
// pair are refined together so identical signatures share identifiers.
struct Refiner {
  const ExclusivityGraph& g;

  using Signature = std::pair<int, std::vector<int>>;

  std::vector<int> neighbour_colours(const std::vector<int>& colours, int v) const {
    std::vector<int> out;
    for (int u = 0; u < g.order(); ++u)
      if (g.edge(v, u)) out.push_back(colours[u]);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Returns false if the two colourings split incompatibly.
  bool refine_pair(std::vector<int>& a, std::vector<int>& b) const {
    const int m = g.order();
    for (int round = 0; round < m + 1; ++round) {
      std::map<Signature, int> ids;
      std::vector<Signature> sa(m), sb(m);
      for (int v = 0; v < m; ++v) {
        sa[v] = {a[v], neighbour_colours(a, v)};
        sb[v] = {b[v], neighbour_colours(b, v)};
        ids.emplace(sa[v], 0);
        ids.emplace(sb[v], 0);
      }
      int next = 0;
      for (auto& [sig, id] : ids) id = next++;
      std::vector<int> na(m), nb(m);
      for (int v = 0; v < m; ++v) {
        na[v] = ids[sa[v]];
        nb[v] = ids[sb[v]];
      }
      std::vector<int> ha(next, 0), hb(next, 0);
      for (int v = 0; v < m; ++v) {
        ++ha[na[v]];
        ++hb[nb[v]];
      }
      if (ha != hb) return false;
      const bool stable = (na == a && nb == b);
      a = std::move(na);
      b = std::move(nb);
      if (stable) return true;
    }
    return true;
  }

  bool all_singletons(const std::vector<int>& colours) const {
    std::vector<int> histogram(g.order(), 0);
    int max = 0;
    for (int c : colours) max = std::max(max, ++histogram[c]);
    return max == 1;
  }

  bool is_automorphism(const std::vector<int>& perm) const {
    const int m = g.order();
    for (int u = 0; u < m; ++u)
      for (int v = u + 1; v < m; ++v)
        if (g.edge(u, v) != g.edge(perm[u], perm[v])) return false;
    return true;
  }

  // Backtracking individualisation-refinement search for one automorphism
  // consistent with the pair of colourings; appends it to `out` on success.
  bool search(std::vector<int> a, std::vector<int> b, std::vector<int>* out) const {
    if (!refine_pair(a, b)) return false;
    const int m = g.order();
    if (all_singletons(a)) {
      std::vector<int> where_b(m, -1);
      for (int v = 0; v < m; ++v) where_b[b[v]] = v;
      std::vector<int> perm(m);
      for (int v = 0; v < m; ++v) perm[v] = where_b[a[v]];
      if (!is_automorphism(perm)) return false;
      *out = perm;
      return true;
    }
    // smallest non-singleton colour class, deterministic
    std::map<int, int> sizes;
    for (int c : a) ++sizes[c];
    int cell = -1;
    for (const auto& [c, s] : sizes)
      if (s > 1 && (cell < 0 || s < sizes[cell])) cell = c;
    int pivot = -1;
    for (int v = 0; v < m; ++v)
      if (a[v] == cell) {
        pivot = v;
        break;
      }
    const int fresh =
        std::max(*std::max_element(a.begin(), a.end()),
                 *std::max_element(b.begin(), b.end())) + 1;
    for (int w = 0; w < m; ++w) {
      if (b[w] != cell) continue;
      auto na = a;
      auto nb = b;
      na[pivot] = fresh;
      nb[w] = fresh;
      if (search(std::move(na), std::move(nb), out)) return true;
    }
    return false;
  }
};

}  // namespace

bool is_vertex_transitive(const ExclusivityGraph& g) {
  const int m = g.order();
  if (m > 4096) throw std::invalid_argument("is_vertex_transitive limited to 4096 vertices");
  if (m == 1) return true;
  Refiner r{g};
  std::vector<int> base(m, 0), copy(m, 0);
  r.refine_pair(base, copy);
  // Refinement invariants are automorphism-invariant: any split separates
  // orbits, so a transitive graph must stay monochromatic.
  for (int v = 1; v < m; ++v)
    if (base[v] != base[0]) return false;

  std::vector<char> in_orbit(m, 0);
  in_orbit[0] = 1;
  std::vector<std::vector<int>> perms;
  auto close_orbit = [&]() {
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& p : perms)
        for (int v = 0; v < m; ++v)
          if (in_orbit[v]) {
            if (!in_orbit[p[v]]) {
              in_orbit[p[v]] = 1;
              grew = true;
            }
            for (int u = 0; u < m; ++u)
              if (p[u] == v && !in_orbit[u]) {
                in_orbit[u] = 1;
                grew = true;
              }
          }
    }
  };
  for (int target = 1; target < m; ++target) {
    if (in_orbit[target]) continue;
    std::vector<int> a(base), b(base), perm;
    const int fresh = *std::max_element(base.begin(), base.end()) + 1;
    a[0] = fresh;
    b[target] = fresh;
    if (!r.search(std::move(a), std::move(b), &perm)) return false;
    perms.push_back(std::move(perm));
    close_orbit();
  }
  return true;
}

namespace {

struct BitsetOps {
  int words;
  bool test(const std::vector<uint64_t>& s, int v) const {
    return (s[v >> 6] >> (v & 63)) & 1u;
  }
  void clear(std::vector<uint64_t>& s, int v) const { s[v >> 6] &= ~(1ull << (v & 63)); }
  int count(const std::vector<uint64_t>& s) const {
    int c = 0;
    for (auto w : s) c += std::popcount(w);
    return c;
  }
  bool empty(const std::vector<uint64_t>& s) const {
    for (auto w : s)
      if (w) return false;
    return true;
  }
};

struct AlphaSolver {
  const ExclusivityGraph& g;
  BitsetOps ops;
  std::vector<int> best;
  std::vector<int> current;

  int degree_in(const std::vector<uint64_t>& candidates, int v) const {
    int d = 0;
    for (int w = 0; w < ops.words; ++w)
      d += std::popcount(g.row(v)[w] & candidates[w]);
    return d;
  }

  // Greedy partition of the candidate set into cliques; each clique can
  // contribute at most one vertex to an independent set.
  int clique_cover_bound(std::vector<uint64_t> pool) const {
    int cliques = 0;
    while (!ops.empty(pool)) {
      int seed = -1;
      for (int w = 0; w < ops.words && seed < 0; ++w)
        if (pool[w]) seed = (w << 6) + std::countr_zero(pool[w]);
      std::vector<int> clique{seed};
      ops.clear(pool, seed);
      for (int v = seed + 1; v < g.order(); ++v) {
        if (!ops.test(pool, v)) continue;
        bool adjacent_to_all = true;
        for (int u : clique)
          if (!g.edge(u, v)) {
            adjacent_to_all = false;
            break;
          }
        if (adjacent_to_all) {
          clique.push_back(v);
          ops.clear(pool, v);
        }
      }
      ++cliques;
    }
    return cliques;
  }

  void expand(std::vector<uint64_t> candidates) {
    const int cand_count = ops.count(candidates);
    if (cand_count == 0) {
      if (current.size() > best.size()) best = current;
      return;
    }
    if (static_cast<int>(current.size()) + cand_count <= static_cast<int>(best.size()))
      return;
    if (static_cast<int>(current.size()) + clique_cover_bound(candidates) <=
        static_cast<int>(best.size()))
      return;

    // branch on the candidate of maximum degree within the candidate set
    int pick = -1, pick_degree = -1;
    for (int v = 0; v < g.order(); ++v)
      if (ops.test(candidates, v)) {
        const int d = degree_in(candidates, v);
        if (d > pick_degree) {
          pick = v;
          pick_degree = d;
        }
      }

    // include
    std::vector<uint64_t> with = candidates;
    ops.clear(with, pick);
    for (int w = 0; w < ops.words; ++w) with[w] &= ~g.row(pick)[w];
    current.push_back(pick);
    expand(std::move(with));
    current.pop_back();

    // exclude
    ops.clear(candidates, pick);
    expand(std::move(candidates));
  }
};

}  // namespace

AlphaResult independence_number(const ExclusivityGraph& g) {
  const int m = g.order();
  AlphaResult result;
  if (m > 512) {
    // bracket only: greedy lower bound, clique-cover upper bound
    AlphaSolver solver{g, BitsetOps{g.words()}};
    std::vector<uint64_t> all(g.words(), 0);
    for (int v = 0; v < m; ++v) all[v >> 6] |= 1ull << (v & 63);
    result.exact = false;
    result.upper = solver.clique_cover_bound(all);
    std::vector<uint64_t> pool = all;
    int lower = 0;
    while (!solver.ops.empty(pool)) {
      int pick = -1, deg = m + 1;
      for (int v = 0; v < m; ++v)
        if (solver.ops.test(pool, v)) {
          const int d = solver.degree_in(pool, v);
          if (d < deg) {
            deg = d;
            pick = v;
          }
        }
      ++lower;
      solver.ops.clear(pool, pick);
      for (int w = 0; w < g.words(); ++w) pool[w] &= ~g.row(pick)[w];
    }
    result.lower = lower;
    result.value = lower;
    return result;
  }

  AlphaSolver solver{g, BitsetOps{g.words()}};
  std::vector<uint64_t> all(g.words(), 0);
  for (int v = 0; v < m; ++v) all[v >> 6] |= 1ull << (v & 63);
  solver.expand(std::move(all));
  result.value = static_cast<int>(solver.best.size());
  result.witness = solver.best;
  std::sort(result.witness.begin(), result.witness.end());
  result.lower = result.upper = result.value;
  // the witness must be edge-free
  for (size_t i = 0; i < result.witness.size(); ++i)
    for (size_t j = i + 1; j < result.witness.size(); ++j)
      if (g.edge(result.witness[i], result.witness[j]))
        throw std::logic_error("witness verification failed");
  return result;
}

std::string to_dot(const ExclusivityGraph& g) {
  std::ostringstream os;
  os << "graph exclusivity {\n";
  for (int v = 0; v < g.order(); ++v)
    os << "  n" << v << " [label=\"" << g.labels()[v] << "\"];\n";
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.edge(u, v)) os << "  n" << u << " -- n" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace qbounds
