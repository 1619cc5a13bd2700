#pragma once

#include <map>
#include <string>
#include <vector>

#include "muexp/flow.hpp"
#include "muexp/graph.hpp"

namespace muexp {

struct TrimResult {
  VertexSet kept;             ///< A'
  double boundary_before = 0; ///< |E(A, V \ A)|
  double boundary_after = 0;  ///< |E(A', V \ A')|
  double flow_value = 0;
};

/// Shrinks a near-expander A to A' whose induced graph is a (phi/6)-expander.
/// V \ A is contracted into the source, every edge gets capacity 3w/phi and
/// every v in A drains mu(v) into the sink; A' is the sink side of the
/// minimum cut.
inline TrimResult trim(const Graph& g, const VertexMeasure& mu, const VertexSet& a, double phi) {
  require(phi > 0.0, "phi must be positive");
  require(mu.size() == g.vertex_count() && a.universe() == g.vertex_count(),
          "graph, measure and set disagree on n");
  require(!a.empty(), "trimming needs a nonempty set");

  TrimResult out;
  out.boundary_before = cut_weight(g, a);
  const double mu_a = mu.of(a);
  if (out.boundary_before == 0.0) {
    // Zero boundary: identity, whether or not G[A] expands.
    out.kept = a;
    return out;
  }
  require(out.boundary_before <= phi * mu_a / 9.0 * (1.0 + kEpsilon),
          "trimming precondition |E(A, V\\A)| <= phi mu(A) / 9 fails: " +
              std::to_string(out.boundary_before) + " > " + std::to_string(phi * mu_a / 9.0));

  std::vector<int> local(g.vertex_count(), -1);
  int k = 0;
  for (Vertex v : a.members()) local[v] = k++;
  const int s = k, t = k + 1;
  FlowNetwork net(k + 2, s, t);
  const double cap = 3.0 / phi;
  std::map<int, double> from_source;
  for (const Edge& e : g.edges()) {
    const int lu = local[e.u], lv = local[e.v];
    if (lu >= 0 && lv >= 0) {
      if (lu != lv) net.add_undirected(lu, lv, cap * e.w);
    } else if (lu >= 0) {
      from_source[lu] += cap * e.w;
    } else if (lv >= 0) {
      from_source[lv] += cap * e.w;
    }
  }
  for (const auto& [v, c] : from_source) net.add_arc(s, v, c);
  for (Vertex v : a.members())
    if (mu[v] > 0.0) net.add_arc(local[v], t, mu[v]);

  const FlowSolution sol = max_flow(net);
  out.flow_value = sol.value;
  out.kept = VertexSet(g.vertex_count());
  for (Vertex v : a.members())
    if (!sol.source_side[local[v]]) out.kept.insert(v);

  ensure(!out.kept.empty(), "trimming removed every vertex");
  out.boundary_after = cut_weight(g, out.kept);
  const double tol = kEpsilon * std::max(1.0, mu_a);
  ensure(mu.of(out.kept) >= mu_a - 4.0 * out.boundary_before / phi - tol,
         "trimming lost more than 4|E(A, V\\A)|/phi measure");
  ensure(out.boundary_after <= 2.0 * out.boundary_before + tol,
         "trimming more than doubled the boundary");
  return out;
}

}  // namespace muexp
