#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "muexp/cut_matching.hpp"
#include "muexp/graph.hpp"
#include "muexp/trimming.hpp"
#include "muexp/verify.hpp"

namespace muexp {

struct BalancedOrExpander {
  enum class Kind { Certified, Balanced, UnbalancedExpander };

  Kind kind = Kind::Certified;
  VertexSet a_side;  ///< A, or A' after trimming
  VertexSet r_side;
  std::optional<double> cut_expansion;  ///< mu-expansion of (a_side, r_side) in G
  CutMatchingOutcome game;
  std::optional<TrimResult> trimmed;
};

inline const char* to_string(BalancedOrExpander::Kind k) {
  switch (k) {
    case BalancedOrExpander::Kind::Certified: return "certified";
    case BalancedOrExpander::Kind::Balanced: return "balanced-cut";
    case BalancedOrExpander::Kind::UnbalancedExpander: return "unbalanced-expander-cut";
  }
  return "?";
}

/// One game, then trimming when the game ends on a near-expander. A trimmed
/// side A' is reported as an expander cut when mu(V \ A') <= mu(V) / log n.
inline BalancedOrExpander balanced_or_expander(const Graph& g, const VertexMeasure& mu,
                                               const GameParams& params, Rng& rng,
                                               double log_base = 2.0) {
  require(log_base > 1.0, "log base must exceed 1");
  BalancedOrExpander out;
  out.game = run_cut_matching(g, mu, params, rng);
  out.a_side = out.game.a_side;
  out.r_side = out.game.r_side;
  out.cut_expansion = out.game.cut_expansion;

  using V = CutMatchingOutcome::Variant;
  using K = BalancedOrExpander::Kind;
  switch (out.game.variant) {
    case V::CertifiedExpander:
      out.kind = K::Certified;
      return out;
    case V::BalancedCut:
      out.kind = K::Balanced;
      return out;
    case V::NearExpanderCut:
      break;
  }

  const double boundary = cut_weight(g, out.a_side);
  const double bound = mu.of(out.a_side) * params.phi / 9.0;
  ensure(boundary <= bound * (1.0 + kEpsilon),
         "near-expander side violates the trimming precondition: " + std::to_string(boundary) +
             " > " + std::to_string(bound));
  TrimResult tr = trim(g, mu, out.a_side, params.phi);
  out.a_side = tr.kept;
  out.r_side = tr.kept.complement();
  out.trimmed = std::move(tr);
  out.cut_expansion = mu_expansion_of_cut(g, mu, out.r_side).value_or(0.0);
  const double n = static_cast<double>(g.vertex_count());
  const double cutoff = mu.total() / (std::log(n) / std::log(log_base));
  out.kind = mu.of(out.r_side) <= cutoff ? K::UnbalancedExpander : K::Balanced;
  return out;
}

struct DecompositionConfig {
  GameConfig game;
  double log_base = 2.0;
  std::optional<int> depth_limit;  ///< default 4 log2(n)^2 + 8
  std::size_t verify_max_n = 16;   ///< brute-force leaf clusters up to this size; 0 disables
  bool keep_traces = false;
};

enum class Certificate { CertifiedByGame, CertifiedByTrim, Singleton };

inline const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::CertifiedByGame: return "certified-by-game";
    case Certificate::CertifiedByTrim: return "certified-by-trim";
    case Certificate::Singleton: return "singleton";
  }
  return "?";
}

struct ClusterCertificate {
  Certificate kind = Certificate::Singleton;
  std::optional<Expansion> measured;  ///< brute-forced expansion of G[cluster]
};

struct DecompositionResult {
  std::vector<std::vector<Vertex>> clusters;  ///< each ascending; ordered by first vertex
  std::vector<ClusterCertificate> certificates;
  double inter_cluster_edge_weight = 0.0;
  int recursion_depth = 0;
  int games_played = 0;
  double charging_ratio = 0.0;  ///< inter weight / (phi mu(V) log2(n)^2)
  double log_mu_star = 0.0;     ///< log2(max mu / min mu) over the terminals
  std::vector<std::string> diagnostics;
  std::vector<std::vector<RoundRecord>> traces;  ///< one per game, in play order
};

namespace detail {

class Decomposer {
 public:
  Decomposer(const Graph& g, const VertexMeasure& mu, double phi, const DecompositionConfig& cfg,
             Rng& rng)
      : g_(g), mu_(mu), phi_(phi), cfg_(cfg), rng_(rng) {
    const double lg = std::log2(static_cast<double>(std::max<std::size_t>(g.vertex_count(), 2)));
    limit_ = cfg.depth_limit ? *cfg.depth_limit : static_cast<int>(std::ceil(4.0 * lg * lg)) + 8;
  }

  DecompositionResult run() {
    std::vector<Vertex> all(g_.vertex_count());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<Vertex>(v);
    if (!all.empty()) process(all, 0);
    return finish();
  }

 private:
  struct Leaf {
    std::vector<Vertex> members;
    Certificate kind;
  };

  void process(const std::vector<Vertex>& ids, int depth) {
    ensure(depth <= limit_, "recursion depth exceeded " + std::to_string(limit_) +
                                "; the decomposition is not making progress");
    res_.recursion_depth = std::max(res_.recursion_depth, depth);
    const Subgraph sub = induced_subgraph(g_, ids);
    const auto comps = connected_components(sub.graph);
    if (comps.size() > 1) {
      for (const auto& comp : comps) process(lift(sub, comp), depth);
      return;
    }
    const VertexMeasure mu_local = mu_.restrict(sub.to_parent);
    if (ids.size() == 1 || mu_local.total() == 0.0) {
      leaves_.push_back({ids, Certificate::Singleton});
      return;
    }

    const GameParams params =
        make_game_params(sub.graph.vertex_count(), mu_local.total(), phi_, cfg_.game);
    BalancedOrExpander boe = balanced_or_expander(sub.graph, mu_local, params, rng_, cfg_.log_base);
    ++res_.games_played;
    if (cfg_.keep_traces) res_.traces.push_back(boe.game.trace);

    using K = BalancedOrExpander::Kind;
    if (boe.kind == K::Certified) {
      leaves_.push_back({ids, Certificate::CertifiedByGame});
      return;
    }
    VertexSet a = boe.a_side, r = boe.r_side;
    if (std::min(mu_local.of(a), mu_local.of(r)) <= 0.0) {
      // Degenerate measures only; the game proper never returns such a cut.
      if (ids.size() > 16) {
        res_.diagnostics.push_back("zero-measure side on a component of " +
                                   std::to_string(ids.size()) + " vertices; kept as one cluster");
        leaves_.push_back({ids, boe.kind == K::UnbalancedExpander ? Certificate::CertifiedByTrim
                                                                  : Certificate::CertifiedByGame});
        return;
      }
      const BruteForceCut bf = brute_force_expansion(sub.graph, mu_local);
      if (bf.value.is_infinite()) {
        leaves_.push_back({ids, Certificate::Singleton});
        return;
      }
      res_.diagnostics.push_back("zero-measure side replaced by a brute-force sparsest cut");
      a = bf.witness;
      r = bf.witness.complement();
      process(lift(sub, a.members()), depth + 1);
      process(lift(sub, r.members()), depth + 1);
      return;
    }
    if (boe.kind == K::UnbalancedExpander) {
      leaves_.push_back({lift(sub, a.members()), Certificate::CertifiedByTrim});
    } else {
      process(lift(sub, a.members()), depth + 1);
    }
    process(lift(sub, r.members()), depth + 1);
  }

  static std::vector<Vertex> lift(const Subgraph& sub, std::span<const Vertex> local) {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(sub.to_parent[v]);
    std::sort(out.begin(), out.end());
    return out;
  }

  DecompositionResult finish() {
    for (auto& l : leaves_) std::sort(l.members.begin(), l.members.end());
    std::sort(leaves_.begin(), leaves_.end(),
              [](const Leaf& x, const Leaf& y) { return x.members.front() < y.members.front(); });
    const std::size_t n = g_.vertex_count();
    std::vector<int> owner(n, -1);
    for (std::size_t c = 0; c < leaves_.size(); ++c) {
      for (Vertex v : leaves_[c].members) {
        ensure(owner[v] < 0, "vertex assigned to two clusters");
        owner[v] = static_cast<int>(c);
      }
    }
    ensure(std::none_of(owner.begin(), owner.end(), [](int o) { return o < 0; }),
           "vertex assigned to no cluster");
    for (const Edge& e : g_.edges())
      if (owner[e.u] != owner[e.v]) res_.inter_cluster_edge_weight += e.w;

    for (auto& l : leaves_) {
      ClusterCertificate cert{l.kind, std::nullopt};
      if (l.members.size() >= 2 && l.members.size() <= cfg_.verify_max_n) {
        const Subgraph sub = induced_subgraph(g_, l.members);
        cert.measured = brute_force_expansion(sub.graph, mu_.restrict(sub.to_parent)).value;
      }
      res_.clusters.push_back(std::move(l.members));
      res_.certificates.push_back(cert);
    }
    const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
    if (mu_.total() > 0.0)
      res_.charging_ratio = res_.inter_cluster_edge_weight / (phi_ * mu_.total() * lg * lg);
    if (!mu_.support().empty()) res_.log_mu_star = std::log2(mu_.spread());
    return std::move(res_);
  }

  const Graph& g_;
  const VertexMeasure& mu_;
  double phi_;
  const DecompositionConfig& cfg_;
  Rng& rng_;
  int limit_ = 0;
  std::vector<Leaf> leaves_;
  DecompositionResult res_;
};

}  // namespace detail

/// Recursive expander decomposition on induced subgraphs, components first.
/// Sequential; the single generator is consumed in depth-first order.
inline DecompositionResult decompose(const Graph& g, const VertexMeasure& mu, double phi,
                                     const DecompositionConfig& config, Rng& rng) {
  require(phi > 0.0 && std::isfinite(phi), "phi must be positive");
  require(mu.size() == g.vertex_count(), "measure and graph disagree on n");
  require(config.verify_max_n <= kBruteForceLimit, "verification cap cannot exceed 20 vertices");
  return detail::Decomposer(g, mu, phi, config, rng).run();
}

inline PartitionReport validate_partition(const Graph& g, const VertexMeasure& mu,
                                          const DecompositionResult& result, double level,
                                          std::size_t max_n = 16) {
  return validate_partition(g, mu, result.clusters, result.inter_cluster_edge_weight, level, max_n);
}

}  // namespace muexp
