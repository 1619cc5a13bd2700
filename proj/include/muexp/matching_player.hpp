#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "muexp/cut_player.hpp"
#include "muexp/flow.hpp"
#include "muexp/graph.hpp"

namespace muexp {

/// Pi(G[A_t]): super-source s = n to every source v at m_v, every target v to
/// super-sink t = n + 1 at mbar_v / (1 + alpha), every edge of weight w both
/// ways at c * w / (1 + alpha). Vertex ids are local to g_active.
inline FlowNetwork build_pi_problem(const Graph& g_active, const VertexMeasure& mu_active,
                                    const WeightedBipartition& bip, double c, double alpha = 0.0) {
  require(mu_active.size() == g_active.vertex_count(), "measure and graph disagree on n");
  require(c > 0.0, "edge capacity c must be positive");
  require(alpha >= 0.0, "alpha must be non-negative");
  const double total = mu_active.total();
  const double tol = 1e-9 * std::max(1.0, total);
  require(bip.target_mass() >= total / 2.0 - tol, "matching player needs mbar(targets) >= mu(A)/2");
  require(bip.source_mass() <= total / 8.0 + tol, "matching player needs m(sources) <= mu(A)/8");

  const int n = static_cast<int>(g_active.vertex_count());
  FlowNetwork net(n + 2, n, n + 1);
  for (const auto& s : bip.sources) net.add_arc(n, s.v, s.weight);
  for (const auto& t : bip.targets) net.add_arc(t.v, n + 1, t.weight / (1.0 + alpha));
  for (const Edge& e : g_active.edges())
    if (e.u != e.v) net.add_undirected(e.u, e.v, c * e.w / (1.0 + alpha));
  return net;
}

struct MatchingRoundResult {
  std::vector<Vertex> removed;          ///< S_t, local ids, ascending
  StochasticMatching matching;          ///< M_t over the local ids
  std::optional<double> cut_expansion;  ///< mu-expansion of (S_t, A_t \ S_t) in G[A_t]
  PathDecomposition routing;            ///< surviving flow paths, s and t stripped
  bool feasible = false;                ///< every source arc saturated
};

/// One matching-player round on G[A_t]: either all sources route to targets,
/// or the residual source side S_t is cut away and the flow paths that stay
/// outside it form the matching.
inline MatchingRoundResult solve_matching_round(const Graph& g_active,
                                                const VertexMeasure& mu_active,
                                                const WeightedBipartition& bip, double c,
                                                int round_index = 0) {
  const FlowNetwork net = build_pi_problem(g_active, mu_active, bip, c);
  const FlowSolution sol = max_flow(net);
  const int n = static_cast<int>(g_active.vertex_count());
  const int s = net.source(), t = net.sink();

  MatchingRoundResult out;
  for (int v = 0; v < n; ++v)
    if (sol.source_side[v]) out.removed.push_back(v);
  out.feasible = out.removed.empty();

  const PathDecomposition paths = decompose_paths(net, sol);
  std::map<std::pair<Vertex, Vertex>, double> pairs;
  for (const FlowPath& p : paths.paths) {
    bool touches_cut = false;
    for (int node : p.nodes)
      if (node != s && node != t && sol.source_side[node]) touches_cut = true;
    if (touches_cut || p.nodes.size() < 3) continue;
    FlowPath inner = p;
    inner.nodes.assign(p.nodes.begin() + 1, p.nodes.end() - 1);
    pairs[std::minmax(static_cast<Vertex>(p.first), static_cast<Vertex>(p.last))] += p.weight;
    out.routing.paths.push_back(std::move(inner));
  }
  std::vector<MatchedPair> flat;
  flat.reserve(pairs.size());
  for (const auto& [key, w] : pairs) flat.push_back({key.first, key.second, w});
  out.matching = StochasticMatching::complete(flat, mu_active, round_index);

  if (!out.removed.empty()) {
    const VertexSet cut(g_active.vertex_count(), out.removed);
    const double mu_cut = mu_active.of(cut);
    const double mu_rest = mu_active.total() - mu_cut;
    ensure(out.removed.size() < g_active.vertex_count(), "matching player removed all of A_t");
    const auto e = mu_expansion_of_cut(g_active, mu_active, cut);
    ensure(e.is_finite(), "removed set has zero measure");
    out.cut_expansion = e.value();
    const double scale = std::max(1.0, mu_active.total());
    ensure(*out.cut_expansion <= 7.0 / c + kEpsilon * scale,
           "removed cut exceeds the 7/c expansion bound");
    ensure(mu_rest >= mu_active.total() / 3.0 - kEpsilon * scale,
           "removed cut leaves less than a third of the measure");
  }
  return out;
}

}  // namespace muexp
