#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "muexp/cut_player.hpp"
#include "muexp/dense_oracle.hpp"
#include "muexp/graph.hpp"
#include "muexp/matching_player.hpp"
#include "muexp/spectral.hpp"

namespace muexp {

using Rng = std::mt19937_64;

/// Knobs whose hidden constants the asymptotic bounds leave open.
struct GameConfig {
  double t_factor = 2.0;           ///< T = ceil(t_factor * log2(n)^2)
  double c_factor = 1.0;           ///< c = max(1, round(c_factor / (phi ln n)))
  std::optional<int> delta;        ///< override for the walk power
  std::size_t dense_limit = kDefaultDenseLimit;
  bool trace_potential = false;    ///< record psi(t) when n <= dense_limit
};

struct GameParams {
  double phi = 0.0;
  int rounds_T = 1;
  int capacity_c = 1;
  int delta = 1;
  double stop_threshold = 0.0;  ///< mu(V) c phi / 70
  std::size_t dense_limit = kDefaultDenseLimit;
  bool trace_potential = false;
};

inline GameParams make_game_params(std::size_t n, double mu_total, double phi,
                                   const GameConfig& cfg = {}) {
  require(phi > 0.0 && std::isfinite(phi), "phi must be positive");
  require(cfg.t_factor > 0.0 && cfg.c_factor > 0.0, "t_factor and c_factor must be positive");
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  GameParams p;
  p.phi = phi;
  const double lg = std::log2(nn);
  p.rounds_T = std::max(1, static_cast<int>(std::ceil(cfg.t_factor * lg * lg)));
  p.capacity_c = std::max(1, static_cast<int>(std::lround(cfg.c_factor / (phi * std::log(nn)))));
  p.delta = cfg.delta ? *cfg.delta : choose_delta(n);
  require(is_power_of_two(p.delta), "delta must be a power of two");
  p.stop_threshold = mu_total * p.capacity_c * phi / 70.0;
  p.dense_limit = cfg.dense_limit;
  p.trace_potential = cfg.trace_potential;
  return p;
}

struct RoundRecord {
  int t = 0;
  std::size_t active_size = 0;
  double mu_removed = 0.0;
  double matching_weight = 0.0;
  std::optional<double> psi;
};

struct CutMatchingOutcome {
  enum class Variant { CertifiedExpander, BalancedCut, NearExpanderCut };

  Variant variant = Variant::CertifiedExpander;
  VertexSet a_side;
  VertexSet r_side;
  std::optional<double> cut_expansion;  ///< exact mu-expansion of (A, R) in G when R is nonempty
  int rounds_played = 0;
  std::vector<RoundRecord> trace;
  std::vector<std::string> diagnostics;
};

inline const char* to_string(CutMatchingOutcome::Variant v) {
  switch (v) {
    case CutMatchingOutcome::Variant::CertifiedExpander: return "certified-expander";
    case CutMatchingOutcome::Variant::BalancedCut: return "balanced-cut";
    case CutMatchingOutcome::Variant::NearExpanderCut: return "near-expander-cut";
  }
  return "?";
}

/// Everything a test needs to inspect one finished round.
struct RoundView {
  int t;
  const GameParams& params;
  const ActiveState& before;          ///< A_t before the round
  const std::vector<double>& projection;
  const WeightedBipartition& bipartition;        ///< global ids
  const Subgraph& active_graph;                  ///< G[A_t]
  const VertexMeasure& active_measure;           ///< mu restricted to A_t
  const WeightedBipartition& local_bipartition;  ///< ids of active_graph
  const MatchingRoundResult& result;             ///< ids of active_graph
  const StochasticMatching& matching;            ///< M_t lifted to V
  const WalkOperator& walk;                      ///< after pushing M_t and removing S_t
};

using RoundObserver = std::function<void(const RoundView&)>;

namespace detail {

inline std::optional<double> maybe_psi(const WalkOperator& w, const GameParams& p) {
  if (!p.trace_potential || w.measure().size() > p.dense_limit) return std::nullopt;
  return dense_walk_and_potential(w, p.dense_limit).psi;
}

}  // namespace detail

/// Plays the cut-matching game on a connected graph for at most T rounds,
/// stopping early once the removed measure exceeds mu(V) c phi / 70.
inline CutMatchingOutcome run_cut_matching(const Graph& g, const VertexMeasure& mu,
                                           const GameParams& params, Rng& rng,
                                           const RoundObserver& observer = {}) {
  const std::size_t n = g.vertex_count();
  require(n >= 1, "cut-matching needs a nonempty graph");
  require(mu.size() == n, "measure and graph disagree on n");
  require(mu.total() > 0.0, "cut-matching needs mu(V) > 0");
  require(is_connected(g), "cut-matching needs a connected graph; split components first");

  CutMatchingOutcome out;
  out.a_side = VertexSet::all(n);
  out.r_side = VertexSet(n);
  if (n == 1 || mu.support().size() <= 1) {
    out.variant = CutMatchingOutcome::Variant::CertifiedExpander;
    out.diagnostics.push_back("at most one terminal: every proper cut has infinite expansion");
    out.trace.push_back({0, n, 0.0, 0.0, std::nullopt});
    return out;
  }

  WalkOperator walk(mu, params.delta);
  double mu_removed = 0.0;
  out.trace.push_back({0, n, 0.0, 0.0, detail::maybe_psi(walk, params)});

  int t = 0;
  while (mu_removed <= params.stop_threshold && t < params.rounds_T) {
    const ActiveState before = walk.state();
    const std::vector<double> r = sample_unit_vector(n, rng);
    const std::vector<double> u = projections(walk, r);
    const WeightedBipartition bip = rst_partition(before, u);

    const Subgraph sub = induced_subgraph(g, before.active());
    const VertexMeasure mu_local = mu.restrict(sub.to_parent);
    WeightedBipartition local = bip;
    for (auto& s : local.sources) s.v = sub.to_local[s.v];
    for (auto& x : local.targets) x.v = sub.to_local[x.v];
    const MatchingRoundResult res =
        solve_matching_round(sub.graph, mu_local, local, params.capacity_c, t);

    std::vector<MatchedPair> lifted;
    for (const MatchedPair& p : res.matching.off_diagonal)
      lifted.push_back({sub.to_parent[p.u], sub.to_parent[p.v], p.w});
    StochasticMatching m = StochasticMatching::complete(lifted, mu, t);

    std::vector<Vertex> removed;
    for (Vertex v : res.removed) removed.push_back(sub.to_parent[v]);
    walk.push(m);
    walk.remove(removed);
    for (Vertex v : removed) {
      out.a_side.erase(v);
      out.r_side.insert(v);
      mu_removed += mu[v];
    }
    ++t;
    out.trace.push_back({t, out.a_side.size(), mu_removed, m.matched_weight(),
                         detail::maybe_psi(walk, params)});
    if (observer)
      observer(RoundView{t - 1, params, before, u, bip, sub, mu_local, local, res, walk.matchings().back(),
                         walk});
  }
  out.rounds_played = t;

  using V = CutMatchingOutcome::Variant;
  if (t == params.rounds_T) {
    if (out.r_side.empty())
      out.variant = V::CertifiedExpander;
    else if (mu_removed > params.stop_threshold)
      out.variant = V::BalancedCut;
    else
      out.variant = V::NearExpanderCut;
  } else {
    out.variant = V::BalancedCut;
  }

  if (!out.r_side.empty()) {
    const Expansion e = mu_expansion_of_cut(g, mu, out.r_side);
    ensure(e.is_finite(), "removed side has zero measure");
    out.cut_expansion = e.value();
    ensure(e.value() <= 7.0 / params.capacity_c + kEpsilon * std::max(1.0, mu.total()),
           "cumulative removed cut exceeds the 7/c expansion bound");
  }
  return out;
}

}  // namespace muexp
