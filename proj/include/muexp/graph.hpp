#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "muexp/common.hpp"

namespace muexp {

struct Edge {
  Vertex u;
  Vertex v;
  double w;
};

enum class SelfLoops { Reject, Keep };

/// Undirected weighted graph. Every edge is stored once; incidence lists
/// reference it from both endpoints. Parallel edges are merged by summing
/// weights.
class Graph {
 public:
  struct Incidence {
    Vertex neighbor;
    double weight;
    std::size_t edge;
  };

  Graph() = default;

  Graph(std::size_t n, std::span<const Edge> edges, SelfLoops loops = SelfLoops::Reject)
      : n_(n), adjacency_(n), degree_(n, 0.0) {
    std::map<std::pair<Vertex, Vertex>, double> merged;
    for (const Edge& e : edges) {
      require(e.u >= 0 && e.v >= 0 && static_cast<std::size_t>(e.u) < n &&
                  static_cast<std::size_t>(e.v) < n,
              "edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
      require(e.w > 0.0 && std::isfinite(e.w), "edge weight must be positive and finite");
      require(e.u != e.v || loops == SelfLoops::Keep,
              "self-loop at vertex " + std::to_string(e.u) + " is not allowed");
      merged[std::minmax(e.u, e.v)] += e.w;
    }
    edges_.reserve(merged.size());
    for (const auto& [key, w] : merged) {
      const std::size_t id = edges_.size();
      edges_.push_back({key.first, key.second, w});
      adjacency_[key.first].push_back({key.second, w, id});
      if (key.first != key.second) {
        adjacency_[key.second].push_back({key.first, w, id});
        degree_[key.first] += w;
        degree_[key.second] += w;
      }
      total_weight_ += w;
    }
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Incidence> incident(Vertex v) const { return adjacency_[v]; }

  /// Weight of edges leaving {v}; self-loops excluded.
  double weighted_degree(Vertex v) const { return degree_[v]; }
  double total_weight() const { return total_weight_; }

  /// Weight of the edge {u, v}, or 0 if absent.
  double edge_weight(Vertex u, Vertex v) const {
    for (const Incidence& inc : adjacency_[u])
      if (inc.neighbor == v) return inc.weight;
    return 0.0;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<double> degree_;
  double total_weight_ = 0.0;
};

/// Subset of the vertices of an n-vertex graph with O(1) membership and a
/// sorted member list.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : member_(n, 0) {}

  VertexSet(std::size_t n, std::span<const Vertex> members) : member_(n, 0) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet all(std::size_t n) {
    VertexSet s(n);
    for (std::size_t v = 0; v < n; ++v) s.insert(static_cast<Vertex>(v));
    return s;
  }

  void insert(Vertex v) {
    require(v >= 0 && static_cast<std::size_t>(v) < member_.size(), "vertex out of range");
    if (member_[v]) return;
    member_[v] = 1;
    list_.insert(std::lower_bound(list_.begin(), list_.end(), v), v);
  }

  void erase(Vertex v) {
    if (!member_[v]) return;
    member_[v] = 0;
    list_.erase(std::lower_bound(list_.begin(), list_.end(), v));
  }

  bool contains(Vertex v) const { return member_[v] != 0; }
  std::size_t size() const { return list_.size(); }
  bool empty() const { return list_.empty(); }
  std::size_t universe() const { return member_.size(); }
  std::span<const Vertex> members() const { return list_; }

  VertexSet complement() const {
    VertexSet out(member_.size());
    for (std::size_t v = 0; v < member_.size(); ++v)
      if (!member_[v]) out.insert(static_cast<Vertex>(v));
    return out;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.member_ == b.member_;
  }

 private:
  std::vector<char> member_;
  std::vector<Vertex> list_;
};

/// Non-negative vertex measure. Vertices with positive measure are terminals.
class VertexMeasure {
 public:
  VertexMeasure() = default;

  explicit VertexMeasure(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t v = 0; v < values_.size(); ++v) {
      require(values_[v] >= 0.0 && std::isfinite(values_[v]),
              "vertex measure must be finite and non-negative at vertex " + std::to_string(v));
      if (values_[v] > 0.0) support_.push_back(static_cast<Vertex>(v));
      total_ += values_[v];
    }
  }

  /// mu(v) = weighted degree; the conductance special case.
  static VertexMeasure degrees(const Graph& g) {
    std::vector<double> d(g.vertex_count());
    for (std::size_t v = 0; v < d.size(); ++v) d[v] = g.weighted_degree(static_cast<Vertex>(v));
    return VertexMeasure(std::move(d));
  }

  static VertexMeasure uniform(std::size_t n, double value = 1.0) {
    return VertexMeasure(std::vector<double>(n, value));
  }

  std::size_t size() const { return values_.size(); }
  double operator[](Vertex v) const { return values_[v]; }
  std::span<const double> values() const { return values_; }
  std::span<const Vertex> support() const { return support_; }
  bool is_terminal(Vertex v) const { return values_[v] > 0.0; }
  double total() const { return total_; }

  double of(std::span<const Vertex> vs) const {
    double s = 0.0;
    for (Vertex v : vs) s += values_[v];
    return s;
  }
  double of(const VertexSet& s) const { return of(s.members()); }

  /// max/min over the support; 1 for an empty support.
  double spread() const {
    if (support_.empty()) return 1.0;
    double lo = values_[support_.front()], hi = lo;
    for (Vertex v : support_) {
      lo = std::min(lo, values_[v]);
      hi = std::max(hi, values_[v]);
    }
    return hi / lo;
  }

  /// Measure on the local ids of a subgraph; to_parent[i] is the parent id.
  VertexMeasure restrict(std::span<const Vertex> to_parent) const {
    std::vector<double> out(to_parent.size());
    for (std::size_t i = 0; i < to_parent.size(); ++i) out[i] = values_[to_parent[i]];
    return VertexMeasure(std::move(out));
  }

 private:
  std::vector<double> values_;
  std::vector<Vertex> support_;
  double total_ = 0.0;
};

/// Total weight of edges with exactly one endpoint in s.
inline double cut_weight(const Graph& g, const VertexSet& s) {
  double total = 0.0;
  for (const Edge& e : g.edges())
    if (s.contains(e.u) != s.contains(e.v)) total += e.w;
  return total;
}

/// Weight of edges between the disjoint sets a and b.
inline double edge_weight_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
  double total = 0.0;
  for (const Edge& e : g.edges())
    if ((a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u)))
      total += e.w;
  return total;
}

inline Expansion mu_expansion_of_cut(const Graph& g, const VertexMeasure& mu, const VertexSet& s) {
  require(!s.empty() && s.size() < g.vertex_count(), "cut side must be a proper nonempty subset");
  const double inside = mu.of(s);
  const double denom = std::min(inside, mu.total() - inside);
  if (denom <= 0.0) return Expansion::infinite();
  return Expansion::finite(cut_weight(g, s) / denom);
}

struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
  std::vector<Vertex> to_local;  ///< -1 for parent vertices outside the subgraph
};

inline Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  require(!vertices.empty(), "induced subgraph needs a nonempty vertex set");
  Subgraph out;
  out.to_local.assign(g.vertex_count(), -1);
  out.to_parent.assign(vertices.begin(), vertices.end());
  std::sort(out.to_parent.begin(), out.to_parent.end());
  out.to_parent.erase(std::unique(out.to_parent.begin(), out.to_parent.end()), out.to_parent.end());
  for (std::size_t i = 0; i < out.to_parent.size(); ++i)
    out.to_local[out.to_parent[i]] = static_cast<Vertex>(i);
  std::vector<Edge> local;
  for (const Edge& e : g.edges()) {
    const Vertex a = out.to_local[e.u], b = out.to_local[e.v];
    if (a >= 0 && b >= 0) local.push_back({a, b, e.w});
  }
  out.graph = Graph(out.to_parent.size(), local, SelfLoops::Keep);
  return out;
}

inline Subgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  return induced_subgraph(g, s.members());
}

/// Connected components, each sorted, ordered by smallest member.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Vertex>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<Vertex> q;
    q.push(static_cast<Vertex>(start));
    comp[start] = id;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      out.back().push_back(v);
      for (const auto& inc : g.incident(v)) {
        if (comp[inc.neighbor] < 0) {
          comp[inc.neighbor] = id;
          q.push(inc.neighbor);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

inline bool is_connected(const Graph& g) {
  return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

}  // namespace muexp
