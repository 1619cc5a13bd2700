#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "muexp/spectral.hpp"

namespace muexp {

struct WeightedVertex {
  Vertex v;
  double weight;
};

/// Weighted source and target sets handed to the matching player.
struct WeightedBipartition {
  std::vector<WeightedVertex> sources;
  std::vector<WeightedVertex> targets;
  double eta = 0.0;
  /// 1: the negative side carries enough energy (eta = 0); 2: otherwise.
  int case_taken = 1;
  /// u was negated so that the negative side is the lighter one.
  bool flipped = false;
  /// The single source whose weight was cut short of mu, if any.
  std::optional<Vertex> partial_source;

  double source_mass() const {
    double s = 0.0;
    for (const auto& x : sources) s += x.weight;
    return s;
  }
  double target_mass() const {
    double s = 0.0;
    for (const auto& x : targets) s += x.weight;
    return s;
  }
};

/// Lists every violated property of a bipartition for projection u on the
/// active state. Empty means all five hold. `slack` is a relative tolerance
/// on the mass and capacity sums; `order_slack` relaxes the margin and energy
/// inequalities (0 compares them exactly).
inline std::vector<std::string> check_bipartition(const ActiveState& state,
                                                  std::span<const double> u,
                                                  const WeightedBipartition& bip,
                                                  double slack = 1e-12, double order_slack = 0.0) {
  std::vector<std::string> bad;
  const VertexMeasure& mu = state.measure();
  const double total = state.total();

  double src_max = -INFINITY, src_min = INFINITY, tgt_max = -INFINITY, tgt_min = INFINITY;
  for (const auto& s : bip.sources) {
    src_max = std::max(src_max, u[s.v]);
    src_min = std::min(src_min, u[s.v]);
  }
  for (const auto& t : bip.targets) {
    tgt_max = std::max(tgt_max, u[t.v]);
    tgt_min = std::min(tgt_min, u[t.v]);
  }
  const bool below = src_max <= bip.eta && bip.eta <= tgt_min;
  const bool above = src_min >= bip.eta && bip.eta >= tgt_max;
  if (!bip.sources.empty() && !bip.targets.empty() && !below && !above)
    bad.push_back("separation: eta does not separate sources from targets");

  std::vector<double> load(mu.size(), 0.0);
  for (const auto& s : bip.sources) {
    if (!state.in_support(s.v)) bad.push_back("source outside A_t intersect T");
    if (!(s.weight > 0.0)) bad.push_back("non-positive source weight");
    load[s.v] += s.weight;
  }
  for (const auto& t : bip.targets) {
    if (!state.in_support(t.v)) bad.push_back("target outside A_t intersect T");
    if (!(t.weight > 0.0)) bad.push_back("non-positive target weight");
    load[t.v] += t.weight;
  }
  for (std::size_t v = 0; v < load.size(); ++v)
    if (load[v] > mu[static_cast<Vertex>(v)] * (1.0 + slack) + slack * 1e-6)
      bad.push_back("capacity: m_i + mbar_i exceeds mu(i) at vertex " + std::to_string(v));

  if (bip.target_mass() < total / 2.0 * (1.0 - slack))
    bad.push_back("mass: target weight below mu(A_t)/2");
  if (bip.source_mass() > total / 8.0 * (1.0 + slack))
    bad.push_back("mass: source weight above mu(A_t)/8");

  for (const auto& s : bip.sources) {
    const double d = u[s.v] - bip.eta;
    if (d * d < u[s.v] * u[s.v] / 9.0 * (1.0 - order_slack)) bad.push_back("margin: (u_i - eta)^2 < u_i^2 / 9");
  }

  double energy = 0.0, all = 0.0;
  for (const auto& s : bip.sources) energy += s.weight * u[s.v] * u[s.v];
  for (Vertex v : state.active().members()) all += mu[v] * u[v] * u[v];
  if (energy < all / 80.0 * (1.0 - order_slack)) bad.push_back("energy: source energy below 1/80 of the total");
  return bad;
}

namespace detail {

// Takes vertices in the given order at full weight until `budget` is reached;
// the last one may be partial.
inline std::optional<Vertex> take_prefix(std::span<const Vertex> order, const VertexMeasure& mu,
                                         double budget, std::vector<WeightedVertex>& out) {
  double taken = 0.0;
  for (Vertex v : order) {
    if (taken >= budget) break;
    const double w = std::min(mu[v], budget - taken);
    if (w <= 0.0) break;
    out.push_back({v, w});
    taken += w;
    if (w < mu[v]) return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// Splits (part of) A_t into weighted sources and targets from the projection
/// u, following the two-case construction on the lighter sign class.
inline WeightedBipartition rst_partition(const ActiveState& state, std::span<const double> u_in) {
  const VertexMeasure& mu = state.measure();
  require(u_in.size() == mu.size(), "projection vector has the wrong length");
  const double total = state.total();
  require(total > 0.0, "degenerate active set: mu(A_t) = 0");

  const std::vector<Vertex> dom = state.terminals();
  double balance = 0.0, abs_mass = 0.0;
  for (Vertex v : dom) {
    balance += mu[v] * u_in[v];
    abs_mass += mu[v] * std::abs(u_in[v]);
  }
  require(std::abs(balance) <= 1e-7 * std::max(1.0, abs_mass),
          "projection is not balanced: sum mu(i) u_i = " + std::to_string(balance));

  std::vector<double> u(u_in.begin(), u_in.end());
  double mu_neg = 0.0;
  for (Vertex v : dom)
    if (u[v] < 0.0) mu_neg += mu[v];
  WeightedBipartition bip;
  if (mu_neg > total - mu_neg) {
    bip.flipped = true;
    for (double& x : u) x = -x;
  }

  std::vector<Vertex> neg, pos;
  double energy_neg = 0.0, energy_all = 0.0, mass_neg = 0.0;
  for (Vertex v : dom) {
    const double e = mu[v] * u[v] * u[v];
    energy_all += e;
    if (u[v] < 0.0) {
      neg.push_back(v);
      energy_neg += e;
      mass_neg += mu[v];
    } else {
      pos.push_back(v);
    }
  }
  const double budget = total / 8.0;
  auto by_u_then_id = [&](Vertex a, Vertex b) { return u[a] != u[b] ? u[a] < u[b] : a < b; };

  if (energy_neg >= energy_all / 20.0) {
    bip.case_taken = 1;
    bip.eta = 0.0;
    for (Vertex v : pos) bip.targets.push_back({v, mu[v]});
    if (mass_neg <= budget) {
      for (Vertex v : neg) bip.sources.push_back({v, mu[v]});
    } else {
      std::stable_sort(neg.begin(), neg.end(), by_u_then_id);
      bip.partial_source = detail::take_prefix(neg, mu, budget, bip.sources);
    }
  } else {
    bip.case_taken = 2;
    const double spread = abs_mass;  // sum mu(i)|u_i|, sign-invariant
    bip.eta = 4.0 * spread / total;
    const double high = 6.0 * spread / total;
    std::vector<Vertex> heavy;
    for (Vertex v : dom) {
      if (u[v] <= bip.eta) bip.targets.push_back({v, mu[v]});
      if (u[v] >= high) heavy.push_back(v);
    }
    std::stable_sort(heavy.begin(), heavy.end(),
                     [&](Vertex a, Vertex b) { return u[a] != u[b] ? u[a] > u[b] : a < b; });
    bip.partial_source = detail::take_prefix(heavy, mu, budget, bip.sources);
  }

  if (bip.flipped) bip.eta = -bip.eta;
  const auto bad = check_bipartition(state, u_in, bip, 1e-9, 1e-9);
  ensure(bad.empty(), "cut player produced an invalid bipartition: " +
                          (bad.empty() ? std::string() : bad.front()));
  return bip;
}

}  // namespace muexp
