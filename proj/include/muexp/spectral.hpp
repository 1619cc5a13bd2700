#pragma once

// Implicit random-walk operator of the cut player.
//
// With U = diag(mu) (pseudo-inverted on non-terminals), the flow matrix evolves
// as F_{t+1} = N_t U^-1 F_t U^-1 N_t from F_0 = U, where
// N_t = ((delta-1)/delta) U + (1/delta) M_t. Writing Nbar = U^-1/2 N U^-1/2 the
// normalized flow is Fbar_t = Nbar_{t-1} ... Nbar_0 I_T Nbar_0 ... Nbar_{t-1},
// and the walk is W_t = (P_t Fbar_t P_t)^delta. Nothing here forms a matrix;
// every product is a sequence of sparse matvecs in fixed index order.

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "muexp/common.hpp"
#include "muexp/graph.hpp"

namespace muexp {

struct MatchedPair {
  Vertex u;
  Vertex v;
  double w;
};

/// One round's mu-stochastic matching: off-diagonal weights plus the diagonal
/// completion diag(mu - Mtilde 1).
struct StochasticMatching {
  std::vector<MatchedPair> off_diagonal;
  std::vector<double> diagonal;
  int round_index = 0;

  /// M = diag(mu); the matching of a round that matched nothing.
  static StochasticMatching identity(const VertexMeasure& mu, int round) {
    StochasticMatching m;
    m.diagonal.assign(mu.values().begin(), mu.values().end());
    m.round_index = round;
    return m;
  }

  /// Completes symmetric off-diagonal weights to row sums mu. Entries with
  /// u == v are folded into the diagonal (they cancel in the completion).
  static StochasticMatching complete(std::span<const MatchedPair> pairs, const VertexMeasure& mu,
                                     int round) {
    StochasticMatching m;
    m.round_index = round;
    m.diagonal.assign(mu.values().begin(), mu.values().end());
    for (const MatchedPair& p : pairs) {
      require(p.w >= 0.0, "matching weights must be non-negative");
      if (p.u == p.v || p.w == 0.0) continue;
      m.off_diagonal.push_back(p);
      m.diagonal[p.u] -= p.w;
      m.diagonal[p.v] -= p.w;
    }
    for (std::size_t v = 0; v < m.diagonal.size(); ++v) {
      const double scale = std::max(1.0, mu[static_cast<Vertex>(v)]);
      ensure(m.diagonal[v] >= -kEpsilon * scale,
             "matching overloads vertex " + std::to_string(v) + " beyond its measure");
      if (m.diagonal[v] < 0.0) m.diagonal[v] = 0.0;
    }
    return m;
  }

  double matched_weight() const {
    double s = 0.0;
    for (const MatchedPair& p : off_diagonal) s += p.w;
    return s;
  }
};

/// The shrinking domain A_t together with the restricted measure mu_t.
class ActiveState {
 public:
  ActiveState() = default;
  ActiveState(VertexMeasure mu, VertexSet active) : mu_(std::move(mu)), active_(std::move(active)) {
    require(active_.universe() == mu_.size(), "active set and measure disagree on n");
    refresh();
  }

  const VertexMeasure& measure() const { return mu_; }
  const VertexSet& active() const { return active_; }
  double total() const { return total_; }

  /// sqrt(mu_t): zero outside A_t intersect T.
  std::span<const double> sqrt_mu() const { return sqrt_mu_; }
  bool in_support(Vertex v) const { return active_.contains(v) && mu_.is_terminal(v); }

  /// A_t intersect T, ascending.
  std::vector<Vertex> terminals() const {
    std::vector<Vertex> out;
    for (Vertex v : active_.members())
      if (mu_.is_terminal(v)) out.push_back(v);
    return out;
  }

  void remove(std::span<const Vertex> removed) {
    for (Vertex v : removed) active_.erase(v);
    refresh();
  }

 private:
  void refresh() {
    sqrt_mu_.assign(mu_.size(), 0.0);
    total_ = 0.0;
    for (Vertex v : active_.members()) {
      sqrt_mu_[v] = std::sqrt(mu_[v]);
      total_ += mu_[v];
    }
  }

  VertexMeasure mu_;
  VertexSet active_;
  std::vector<double> sqrt_mu_;
  double total_ = 0.0;
};

/// Largest power of two not above max(1, log2 n / log2 20).
inline int choose_delta(std::size_t n) {
  const double bound = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 1))) /
                                         std::log2(20.0));
  int delta = 1;
  while (2.0 * delta <= bound) delta *= 2;
  return delta;
}

class WalkOperator {
 public:
  WalkOperator(VertexMeasure mu, int delta)
      : state_(mu, VertexSet::all(mu.size())), delta_(delta) {
    require(is_power_of_two(delta), "delta must be a power of two");
  }

  const ActiveState& state() const { return state_; }
  const VertexMeasure& measure() const { return state_.measure(); }
  int delta() const { return delta_; }
  std::size_t rounds() const { return matchings_.size(); }
  std::span<const StochasticMatching> matchings() const { return matchings_; }

  void push(StochasticMatching m) {
    require(m.diagonal.size() == measure().size(), "matching has the wrong dimension");
    matchings_.push_back(std::move(m));
  }

  void remove(std::span<const Vertex> removed) { state_.remove(removed); }

 private:
  ActiveState state_;
  int delta_;
  std::vector<StochasticMatching> matchings_;
};

/// Uniform direction on the unit sphere (normalized standard Gaussian).
template <class Rng>
std::vector<double> sample_unit_vector(std::size_t n, Rng& rng) {
  require(n >= 1, "cannot sample a unit vector in dimension 0");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> r(n);
  double norm2 = 0.0;
  while (norm2 == 0.0) {
    norm2 = 0.0;
    for (double& x : r) {
      x = normal(rng);
      norm2 += x * x;
    }
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : r) x *= inv;
  return r;
}

/// P_t x = I_t x - (<sqrt(mu_t), x> / mu(A_t)) sqrt(mu_t).
inline std::vector<double> apply_projection(const ActiveState& state, std::span<const double> x) {
  require(x.size() == state.measure().size(), "vector length mismatch");
  require(state.total() > 0.0, "degenerate active set: mu(A_t) = 0");
  const auto s = state.sqrt_mu();
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += s[i] * x[i];
  const double coef = dot / state.total();
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (s[i] > 0.0) out[i] = x[i] - coef * s[i];
  return out;
}

/// U^-1/2 N U^-1/2 x with N = ((delta-1)/delta) U + (1/delta) M.
inline std::vector<double> apply_normalized_matching(const StochasticMatching& m,
                                                     const VertexMeasure& mu, int delta,
                                                     std::span<const double> x) {
  require(x.size() == mu.size() && m.diagonal.size() == mu.size(), "vector length mismatch");
  const double lazy = static_cast<double>(delta - 1) / delta;
  const double step = 1.0 / delta;
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t v = 0; v < x.size(); ++v) {
    const double mv = mu[static_cast<Vertex>(v)];
    if (mv > 0.0) out[v] = (lazy + step * m.diagonal[v] / mv) * x[v];
  }
  for (const MatchedPair& p : m.off_diagonal) {
    const double mu_u = mu[p.u], mu_v = mu[p.v];
    if (mu_u <= 0.0 || mu_v <= 0.0) continue;
    const double s = step * p.w / std::sqrt(mu_u * mu_v);
    out[p.u] += s * x[p.v];
    out[p.v] += s * x[p.u];
  }
  return out;
}

/// W_t x, composing P_t and the palindromic matching product delta times.
inline std::vector<double> apply_walk(const WalkOperator& w, std::span<const double> x) {
  const VertexMeasure& mu = w.measure();
  const auto matchings = w.matchings();
  std::vector<double> y(x.begin(), x.end());
  for (int rep = 0; rep < w.delta(); ++rep) {
    y = apply_projection(w.state(), y);
    for (auto it = matchings.rbegin(); it != matchings.rend(); ++it)
      y = apply_normalized_matching(*it, mu, w.delta(), y);
    for (std::size_t v = 0; v < y.size(); ++v)
      if (!mu.is_terminal(static_cast<Vertex>(v))) y[v] = 0.0;
    for (const StochasticMatching& m : matchings) y = apply_normalized_matching(m, mu, w.delta(), y);
    y = apply_projection(w.state(), y);
  }
  return y;
}

/// u_i = <W_t(i), r> / sqrt(mu(i)) on A_t intersect T, zero elsewhere.
inline std::vector<double> projections(const WalkOperator& w, std::span<const double> r) {
  std::vector<double> u = apply_walk(w, r);
  const ActiveState& st = w.state();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto v = static_cast<Vertex>(i);
    u[i] = st.in_support(v) ? u[i] / st.sqrt_mu()[i] : 0.0;
  }
  return u;
}

}  // namespace muexp
