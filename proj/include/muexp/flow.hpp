#pragma once

// Exact max flow / min cut on real capacities (Dinic level phases), plus
// decomposition of a flow into source-sink paths. An exact max flow saturates
// every arc leaving the residual-reachable source side, so the min cut it
// returns is a 1-fair cut.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "muexp/common.hpp"

namespace muexp {

struct Arc {
  int from;
  int to;
  double capacity;
  int twin = -1;  ///< opposite arc of the same undirected edge, if any
};

class FlowNetwork {
 public:
  FlowNetwork(int node_count, int source, int sink)
      : node_count_(node_count), source_(source), sink_(sink) {
    require(node_count >= 2, "flow network needs at least two nodes");
    require(source >= 0 && source < node_count && sink >= 0 && sink < node_count,
            "source/sink out of range");
    require(source != sink, "source and sink must differ");
  }

  int add_arc(int from, int to, double capacity) {
    require(from >= 0 && from < node_count_ && to >= 0 && to < node_count_, "arc node out of range");
    require(capacity >= 0.0 && std::isfinite(capacity), "arc capacity must be finite and >= 0");
    arcs_.push_back({from, to, capacity, -1});
    return static_cast<int>(arcs_.size()) - 1;
  }

  /// Two opposite arcs of equal capacity, linked as twins.
  std::pair<int, int> add_undirected(int u, int v, double capacity) {
    const int a = add_arc(u, v, capacity);
    const int b = add_arc(v, u, capacity);
    arcs_[a].twin = b;
    arcs_[b].twin = a;
    return {a, b};
  }

  int node_count() const { return node_count_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  double max_capacity() const {
    double m = 0.0;
    for (const Arc& a : arcs_) m = std::max(m, a.capacity);
    return m;
  }

  /// Zero-threshold used for residual and flow comparisons.
  double tolerance() const { return 1e-12 * std::max(1.0, max_capacity()); }

 private:
  int node_count_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
};

struct FlowSolution {
  double value = 0.0;
  std::vector<double> arc_flows;
  std::vector<char> source_side;  ///< min-cut side containing the source

  std::vector<int> min_cut_side() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < source_side.size(); ++v)
      if (source_side[v]) out.push_back(static_cast<int>(v));
    return out;
  }
};

namespace detail {

class Dinic {
 public:
  explicit Dinic(const FlowNetwork& net)
      : net_(net), eps_(net.tolerance()), adj_(net.node_count()), level_(net.node_count()),
        next_(net.node_count()) {
    const auto& arcs = net.arcs();
    residual_.resize(2 * arcs.size());
    head_.resize(2 * arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      residual_[2 * i] = arcs[i].capacity;
      residual_[2 * i + 1] = 0.0;
      head_[2 * i] = arcs[i].to;
      head_[2 * i + 1] = arcs[i].from;
      adj_[arcs[i].from].push_back(static_cast<int>(2 * i));
      adj_[arcs[i].to].push_back(static_cast<int>(2 * i + 1));
    }
  }

  FlowSolution solve() {
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      while (dfs(net_.source(), std::numeric_limits<double>::infinity()) > 0.0) {
      }
    }
    FlowSolution sol;
    const auto& arcs = net_.arcs();
    sol.arc_flows.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      sol.arc_flows[i] = residual_[2 * i + 1];
      if (arcs[i].from == net_.source()) sol.value += sol.arc_flows[i];
      if (arcs[i].to == net_.source()) sol.value -= sol.arc_flows[i];
    }
    bfs();
    sol.source_side.assign(net_.node_count(), 0);
    for (int v = 0; v < net_.node_count(); ++v) sol.source_side[v] = level_[v] >= 0;
    return sol;
  }

 private:
  bool bfs() {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[net_.source()] = 0;
    q.push(net_.source());
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int e : adj_[v]) {
        if (residual_[e] > eps_ && level_[head_[e]] < 0) {
          level_[head_[e]] = level_[v] + 1;
          q.push(head_[e]);
        }
      }
    }
    return level_[net_.sink()] >= 0;
  }

  double dfs(int v, double pushed) {
    if (v == net_.sink()) return pushed;
    for (auto& i = next_[v]; i < adj_[v].size(); ++i) {
      const int e = adj_[v][i];
      const int to = head_[e];
      if (residual_[e] <= eps_ || level_[to] != level_[v] + 1) continue;
      const double got = dfs(to, std::min(pushed, residual_[e]));
      if (got > 0.0) {
        residual_[e] -= got;
        residual_[e ^ 1] += got;
        return got;
      }
    }
    return 0.0;
  }

  const FlowNetwork& net_;
  double eps_;
  std::vector<std::vector<int>> adj_;
  std::vector<double> residual_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace detail

inline FlowSolution max_flow(const FlowNetwork& net) { return detail::Dinic(net).solve(); }

/// Violations of feasibility, optimality and 1-fairness; empty when valid.
inline std::vector<std::string> check_flow(const FlowNetwork& net, const FlowSolution& sol,
                                           double tol = kEpsilon) {
  std::vector<std::string> bad;
  const auto& arcs = net.arcs();
  std::vector<double> excess(net.node_count(), 0.0);
  double cut_capacity = 0.0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const double f = sol.arc_flows[i];
    if (f < -tol || f > arcs[i].capacity + tol)
      bad.push_back("arc " + std::to_string(i) + " flow outside [0, capacity]");
    excess[arcs[i].from] -= f;
    excess[arcs[i].to] += f;
    const bool out = sol.source_side[arcs[i].from] && !sol.source_side[arcs[i].to];
    const bool in = !sol.source_side[arcs[i].from] && sol.source_side[arcs[i].to];
    if (out) {
      cut_capacity += arcs[i].capacity;
      if (f < arcs[i].capacity - tol)
        bad.push_back("fairness: cut arc " + std::to_string(i) + " not saturated");
    }
    if (in && f > tol) bad.push_back("cut arc " + std::to_string(i) + " carries flow backwards");
  }
  for (int v = 0; v < net.node_count(); ++v)
    if (v != net.source() && v != net.sink() && std::abs(excess[v]) > tol)
      bad.push_back("conservation violated at node " + std::to_string(v));
  if (!sol.source_side[net.source()] || sol.source_side[net.sink()])
    bad.push_back("min cut does not separate source from sink");
  if (std::abs(cut_capacity - sol.value) > tol * std::max(1.0, sol.value))
    bad.push_back("flow value differs from cut capacity");
  return bad;
}

struct FlowPath {
  int first;  ///< node after the source (the source itself for a direct arc)
  int last;   ///< node before the sink
  double weight;
  std::vector<int> nodes;  ///< source ... sink
};

struct PathDecomposition {
  std::vector<FlowPath> paths;

  double total() const {
    double s = 0.0;
    for (const auto& p : paths) s += p.weight;
    return s;
  }
};

/// Greedy path stripping on the flow support. Opposite flows on twin arcs and
/// any cycles met on the way are cancelled, never emitted.
inline PathDecomposition decompose_paths(const FlowNetwork& net, const FlowSolution& sol) {
  const auto& arcs = net.arcs();
  std::vector<double> f = sol.arc_flows;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const int j = arcs[i].twin;
    if (j > static_cast<int>(i)) {
      const double m = std::min(f[i], f[j]);
      f[i] -= m;
      f[j] -= m;
    }
  }
  const double eps = net.tolerance();
  std::vector<std::vector<int>> out(net.node_count());
  for (std::size_t i = 0; i < arcs.size(); ++i) out[arcs[i].from].push_back(static_cast<int>(i));
  std::vector<std::size_t> cursor(net.node_count(), 0);

  auto next_arc = [&](int v) -> int {
    for (auto& i = cursor[v]; i < out[v].size(); ++i)
      if (f[out[v][i]] > eps) return out[v][i];
    return -1;
  };

  PathDecomposition dec;
  std::vector<int> stack;       // arcs of the current walk
  std::vector<int> pos(net.node_count(), -1);  // node -> index in walk, -1 if absent
  const int s = net.source(), t = net.sink();

  while (true) {
    stack.clear();
    std::fill(pos.begin(), pos.end(), -1);
    pos[s] = 0;
    int v = s;
    bool emitted = false;
    while (!emitted) {
      if (v == t) {
        double w = std::numeric_limits<double>::infinity();
        for (int a : stack) w = std::min(w, f[a]);
        FlowPath p;
        p.weight = w;
        p.nodes.push_back(s);
        for (int a : stack) {
          f[a] -= w;
          if (f[a] < 0.0) f[a] = 0.0;
          p.nodes.push_back(arcs[a].to);
        }
        p.first = p.nodes.size() > 2 ? p.nodes[1] : s;
        p.last = p.nodes.size() > 2 ? p.nodes[p.nodes.size() - 2] : t;
        dec.paths.push_back(std::move(p));
        emitted = true;
        break;
      }
      const int a = next_arc(v);
      if (a < 0) {
        if (v == s) return dec;
        // Dead end: only rounding residue arrives here.
        const int back = stack.back();
        f[back] = 0.0;
        stack.pop_back();
        pos[v] = -1;
        v = arcs[back].from;
        continue;
      }
      const int to = arcs[a].to;
      if (pos[to] >= 0) {
        // Cycle: arcs stack[pos[to]..] plus a.
        double w = f[a];
        for (std::size_t k = pos[to]; k < stack.size(); ++k) w = std::min(w, f[stack[k]]);
        f[a] -= w;
        for (std::size_t k = pos[to]; k < stack.size(); ++k) f[stack[k]] -= w;
        while (static_cast<int>(stack.size()) > pos[to]) {
          pos[arcs[stack.back()].to] = -1;
          stack.pop_back();
        }
        pos[to] = static_cast<int>(stack.size());
        v = to;
        continue;
      }
      stack.push_back(a);
      pos[to] = static_cast<int>(stack.size());
      v = to;
    }
    std::fill(cursor.begin(), cursor.end(), 0);
  }
}

}  // namespace muexp
