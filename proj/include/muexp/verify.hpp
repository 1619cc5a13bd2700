#pragma once

// Exhaustive oracles. Exponential in the vertex count; capped at 20 vertices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "muexp/flow.hpp"
#include "muexp/graph.hpp"

namespace muexp {

inline constexpr std::size_t kBruteForceLimit = 20;

struct BruteForceCut {
  Expansion value = Expansion::infinite();
  VertexSet witness;  ///< empty when no cut has two sides of positive measure
};

namespace detail {

struct PackedEdge {
  std::uint32_t u;
  std::uint32_t v;
  double w;
};

inline std::vector<PackedEdge> pack(const Graph& g) {
  std::vector<PackedEdge> out;
  for (const Edge& e : g.edges())
    if (e.u != e.v) out.push_back({static_cast<std::uint32_t>(e.u), static_cast<std::uint32_t>(e.v), e.w});
  return out;
}

}  // namespace detail

/// Minimum mu-expansion over all proper cuts with both sides of positive
/// measure. Vertex 0 is fixed inside the witness; among equal values the
/// smallest enumeration mask wins.
inline BruteForceCut brute_force_expansion(const Graph& g, const VertexMeasure& mu) {
  const std::size_t n = g.vertex_count();
  require(n >= 2 && n <= kBruteForceLimit, "brute-force expansion needs 2 <= n <= 20");
  require(mu.size() == n, "measure and graph disagree on n");
  const auto edges = detail::pack(g);
  const std::uint32_t others = static_cast<std::uint32_t>(n - 1);
  const std::uint32_t full = (1u << others) - 1u;

  BruteForceCut best;
  std::uint32_t best_mask = 0;
  for (std::uint32_t rest = 0; rest < full; ++rest) {
    const std::uint32_t mask = (rest << 1) | 1u;
    double inside = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1u) inside += mu[static_cast<Vertex>(v)];
    const double denom = std::min(inside, mu.total() - inside);
    if (denom <= 0.0) continue;
    double cut = 0.0;
    for (const auto& e : edges)
      if (((mask >> e.u) ^ (mask >> e.v)) & 1u) cut += e.w;
    const Expansion value = Expansion::finite(cut / denom);
    if (value < best.value) {
      best.value = value;
      best_mask = mask;
    }
  }
  if (best.value.is_finite()) {
    best.witness = VertexSet(n);
    for (std::size_t v = 0; v < n; ++v)
      if (best_mask >> v & 1u) best.witness.insert(static_cast<Vertex>(v));
  }
  return best;
}

/// min over S in A of |E(S, V \ S)| / min(mu(S), mu(A \ S)); the numerator
/// counts edges of all of G, including those leaving A.
inline Expansion brute_force_near_expansion(const Graph& g, const VertexMeasure& mu,
                                            const VertexSet& a) {
  require(a.size() <= kBruteForceLimit, "brute-force near-expansion needs |A| <= 20");
  require(mu.size() == g.vertex_count() && a.universe() == g.vertex_count(),
          "graph, measure and set disagree on n");
  const auto members = a.members();
  const std::size_t k = members.size();
  if (k < 2) return Expansion::infinite();

  std::vector<int> bit(g.vertex_count(), -1);
  for (std::size_t i = 0; i < k; ++i) bit[members[i]] = static_cast<int>(i);
  struct Touch {
    int a;
    int b;  ///< -1 when the other end is outside A
    double w;
  };
  std::vector<Touch> touching;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    const int bu = bit[e.u], bv = bit[e.v];
    if (bu >= 0 && bv >= 0) touching.push_back({bu, bv, e.w});
    else if (bu >= 0) touching.push_back({bu, -1, e.w});
    else if (bv >= 0) touching.push_back({bv, -1, e.w});
  }
  const double mu_a = mu.of(a);
  Expansion best = Expansion::infinite();
  const std::uint32_t full = (1u << k) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    double inside = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) inside += mu[members[i]];
    const double denom = std::min(inside, mu_a - inside);
    if (denom <= 0.0) continue;
    double cut = 0.0;
    for (const auto& e : touching) {
      const bool in_a = mask >> e.a & 1u;
      const bool in_b = e.b >= 0 && (mask >> e.b & 1u);
      if (in_a != in_b) cut += e.w;
    }
    const Expansion value = Expansion::finite(cut / denom);
    if (value < best) best = value;
  }
  return best;
}

/// Largest per-edge load / weight over the host when every path routes its
/// weight along consecutive host edges.
inline double check_embedding_congestion(const Graph& host, const PathDecomposition& paths) {
  std::map<std::pair<Vertex, Vertex>, double> load;
  for (const FlowPath& p : paths.paths) {
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
      const auto a = static_cast<Vertex>(p.nodes[i]), b = static_cast<Vertex>(p.nodes[i + 1]);
      require(a >= 0 && b >= 0 && static_cast<std::size_t>(a) < host.vertex_count() &&
                  static_cast<std::size_t>(b) < host.vertex_count() && host.edge_weight(a, b) > 0.0,
              "path uses a pair that is not a host edge: " + std::to_string(a) + " " +
                  std::to_string(b));
      load[std::minmax(a, b)] += p.weight;
    }
  }
  double worst = 0.0;
  for (const auto& [key, l] : load) worst = std::max(worst, l / host.edge_weight(key.first, key.second));
  return worst;
}

struct ClusterCheck {
  std::size_t index = 0;
  std::size_t size = 0;
  bool checked = false;  ///< brute-forced (size within the cap)
  Expansion expansion = Expansion::infinite();
  bool pass = true;
};

struct PartitionReport {
  bool exact = true;
  std::vector<std::string> problems;
  double inter_weight_recount = 0.0;
  double inter_weight_reported = 0.0;
  bool weight_matches = true;
  double level = 0.0;
  std::vector<ClusterCheck> clusters;

  bool all_pass() const {
    if (!exact || !weight_matches) return false;
    return std::all_of(clusters.begin(), clusters.end(), [](const ClusterCheck& c) { return c.pass; });
  }
};

/// Checks that clusters partition V, recounts the inter-cluster weight and
/// brute-forces every cluster of at most max_n vertices against `level`.
inline PartitionReport validate_partition(const Graph& g, const VertexMeasure& mu,
                                          const std::vector<std::vector<Vertex>>& clusters,
                                          double reported_inter_weight, double level,
                                          std::size_t max_n = 16) {
  require(max_n <= kBruteForceLimit, "verification cap cannot exceed 20 vertices");
  PartitionReport rep;
  rep.level = level;
  rep.inter_weight_reported = reported_inter_weight;
  const std::size_t n = g.vertex_count();
  std::vector<int> owner(n, -1);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].empty()) {
      rep.exact = false;
      rep.problems.push_back("cluster " + std::to_string(c) + " is empty");
    }
    for (Vertex v : clusters[c]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        rep.exact = false;
        rep.problems.push_back("vertex " + std::to_string(v) + " out of range");
        continue;
      }
      if (owner[v] >= 0) {
        rep.exact = false;
        rep.problems.push_back("vertex " + std::to_string(v) + " appears in clusters " +
                               std::to_string(owner[v]) + " and " + std::to_string(c));
      }
      owner[v] = static_cast<int>(c);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (owner[v] < 0) {
      rep.exact = false;
      rep.problems.push_back("vertex " + std::to_string(v) + " is in no cluster");
    }
  }
  for (const Edge& e : g.edges())
    if (owner[e.u] != owner[e.v]) rep.inter_weight_recount += e.w;
  rep.weight_matches = std::abs(rep.inter_weight_recount - reported_inter_weight) <=
                       kEpsilon * std::max(1.0, rep.inter_weight_recount);
  if (!rep.weight_matches) rep.problems.push_back("reported inter-cluster weight differs from recount");

  for (std::size_t c = 0; c < clusters.size(); ++c) {
    ClusterCheck chk;
    chk.index = c;
    chk.size = clusters[c].size();
    if (rep.exact && chk.size >= 2 && chk.size <= max_n) {
      const Subgraph sub = induced_subgraph(g, clusters[c]);
      chk.checked = true;
      chk.expansion = brute_force_expansion(sub.graph, mu.restrict(sub.to_parent)).value;
      chk.pass = chk.expansion.at_least(level);
    }
    rep.clusters.push_back(chk);
  }
  return rep;
}

}  // namespace muexp
