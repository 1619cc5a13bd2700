#pragma once

// Reference computations written against plain matrices, sharing no code
// with the library beyond the Graph accessors.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "muexp/graph.hpp"
#include "muexp/verify.hpp"
#include "support/generators.hpp"

namespace muexp::testing {

using Matrix = std::vector<std::vector<double>>;

inline Matrix adjacency(const Graph& g) {
  const std::size_t n = g.vertex_count();
  Matrix a(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    a[e.u][e.v] += e.w;
    a[e.v][e.u] += e.w;
  }
  return a;
}

/// Sum over ordered pairs (i in S, j not in S) of A[i][j].
inline double recount_cut(const Matrix& a, const std::vector<char>& in_s) {
  double cut = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (in_s[i] && !in_s[j]) cut += a[i][j];
  return cut;
}

inline std::vector<char> indicator(std::size_t n, const std::vector<Vertex>& members) {
  std::vector<char> out(n, 0);
  for (Vertex v : members) out[v] = 1;
  return out;
}

/// Minimum conductance cut/min(vol S, vol V\S) over every nonempty proper S
/// with both volumes positive; nullopt when no such S exists.
inline std::optional<double> enumerate_conductance(const Graph& g) {
  const Matrix a = adjacency(g);
  const std::size_t n = a.size();
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) deg[i] += a[i][j];
  std::optional<double> best;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<char> in_s(n);
    double vol_s = 0.0, vol_rest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      in_s[i] = (mask >> i) & 1u;
      (in_s[i] ? vol_s : vol_rest) += deg[i];
    }
    const double denom = vol_s < vol_rest ? vol_s : vol_rest;
    if (denom <= 0.0) continue;
    const double phi = recount_cut(a, in_s) / denom;
    if (!best || phi < *best) best = phi;
  }
  return best;
}

/// Exhaustive mu-expansion of a single cut, from the adjacency matrix.
inline std::optional<double> recount_expansion(const Graph& g, const VertexMeasure& mu,
                                               const std::vector<Vertex>& side) {
  const auto in_s = indicator(g.vertex_count(), side);
  double ms = 0.0, mr = 0.0;
  for (std::size_t i = 0; i < in_s.size(); ++i) (in_s[i] ? ms : mr) += mu[static_cast<Vertex>(i)];
  const double denom = ms < mr ? ms : mr;
  if (denom <= 0.0) return std::nullopt;
  return recount_cut(adjacency(g), in_s) / denom;
}

struct TrimInstance {
  Graph g;
  VertexMeasure mu;
  VertexSet a;
  double phi;
  double near_expansion;
};

/// A dense core A (optionally with a weakly attached extra vertex) inside a
/// small host, with phi drawn between 9|E(A, V\A)|/mu(A) and the brute-force
/// near-expansion of A. nullopt when that interval is empty.
inline std::optional<TrimInstance> random_trim_instance(Gen& gen) {
  const int k = uniform_int(gen, 5, 13);
  const int outside = uniform_int(gen, 2, 6);
  const bool dangler = coin(gen, 0.4);
  const int a_size = k + (dangler ? 1 : 0);
  const int n = a_size + outside;

  std::vector<Edge> edges;
  const Graph core = random_connected_graph(static_cast<std::size_t>(k), uniform_real(gen, 0.55, 0.95), gen);
  for (const Edge& e : core.edges()) edges.push_back(e);
  const Graph out = random_connected_graph(static_cast<std::size_t>(outside), 0.6, gen);
  for (const Edge& e : out.edges()) edges.push_back({e.u + a_size, e.v + a_size, e.w});
  const int bridges = uniform_int(gen, dangler ? 0 : 1, 2);
  for (int i = 0; i < bridges; ++i)
    edges.push_back({static_cast<Vertex>(uniform_int(gen, 0, k - 1)),
                     static_cast<Vertex>(a_size + uniform_int(gen, 0, outside - 1)), 1.0});
  if (dangler) {
    // One edge into the core, several out of A.
    const auto x = static_cast<Vertex>(k);
    edges.push_back({x, static_cast<Vertex>(uniform_int(gen, 0, k - 1)), 1.0});
    const int leave = uniform_int(gen, 2, 3);
    for (int i = 0; i < leave; ++i)
      edges.push_back({x, static_cast<Vertex>(a_size + uniform_int(gen, 0, outside - 1)), 1.0});
  }
  Graph g(static_cast<std::size_t>(n), edges);

  std::vector<double> values;
  if (coin(gen, 0.5)) {
    const VertexMeasure deg = VertexMeasure::degrees(g);
    values.assign(deg.values().begin(), deg.values().end());
  } else {
    values.resize(n);
    for (double& x : values) x = coin(gen, 0.1) ? 0.0 : uniform_real(gen, 0.5, 4.0);
  }
  if (dangler) values[k] = uniform_real(gen, 0.2, 1.5);
  VertexMeasure mu(values);

  VertexSet a(static_cast<std::size_t>(n));
  for (int v = 0; v < a_size; ++v) a.insert(v);
  const double mu_a = mu.of(a);
  if (mu_a <= 0.0) return std::nullopt;
  const Expansion near = brute_force_near_expansion(g, mu, a);
  if (!near.is_finite()) return std::nullopt;
  const double lo = 9.0 * cut_weight(g, a) / mu_a;
  if (lo > near.value()) return std::nullopt;
  const double phi = lo + uniform_real(gen, 0.0, 1.0) * (near.value() - lo);
  if (phi <= 0.0) return std::nullopt;
  return TrimInstance{std::move(g), std::move(mu), std::move(a), phi, near.value()};
}

}  // namespace muexp::testing
