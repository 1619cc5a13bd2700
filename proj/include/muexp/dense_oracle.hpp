#pragma once

// Dense materializations of the walk operator. Test and diagnostics only:
// everything here is O(n^3) per round.

#include <Eigen/Dense>

#include "muexp/spectral.hpp"

namespace muexp {

inline constexpr std::size_t kDefaultDenseLimit = 64;

inline Eigen::MatrixXd dense_matching(const StochasticMatching& m) {
  const auto n = static_cast<Eigen::Index>(m.diagonal.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v) out(v, v) = m.diagonal[v];
  for (const MatchedPair& p : m.off_diagonal) {
    out(p.u, p.v) += p.w;
    out(p.v, p.u) += p.w;
  }
  return out;
}

/// Pseudo-inverse power of diag(mu): entries mu^p on terminals, 0 elsewhere.
inline Eigen::VectorXd measure_power(const VertexMeasure& mu, double p) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mu.size()));
  for (Vertex v : mu.support()) out(v) = std::pow(mu[v], p);
  return out;
}

inline Eigen::MatrixXd dense_normalized_matching(const StochasticMatching& m,
                                                 const VertexMeasure& mu, int delta) {
  const auto n = static_cast<Eigen::Index>(mu.size());
  Eigen::MatrixXd u = measure_power(mu, 1.0).asDiagonal();
  Eigen::MatrixXd nmat = (static_cast<double>(delta - 1) / delta) * u + dense_matching(m) / delta;
  const Eigen::VectorXd half = measure_power(mu, -0.5);
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = half(i) * nmat(i, j) * half(j);
  return out;
}

inline Eigen::MatrixXd dense_projection(const ActiveState& state) {
  const auto n = static_cast<Eigen::Index>(state.measure().size());
  Eigen::VectorXd s(n);
  Eigen::VectorXd ind = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i) = state.sqrt_mu()[i];
    if (s(i) > 0.0) ind(i) = 1.0;
  }
  Eigen::MatrixXd p = ind.asDiagonal();
  p -= s * s.transpose() / state.total();
  return p;
}

struct DenseWalk {
  Eigen::MatrixXd flow;  ///< F_t
  Eigen::MatrixXd walk;  ///< W_t
  double psi = 0.0;      ///< tr(W_t^2)
};

/// F_t by the recursion F_{t+1} = N_t U^-1 F_t U^-1 N_t, then
/// W_t = (P_t U^-1/2 F_t U^-1/2 P_t)^delta and psi = ||W_t||_F^2.
inline DenseWalk dense_walk_and_potential(const WalkOperator& w,
                                          std::size_t dense_limit = kDefaultDenseLimit) {
  const VertexMeasure& mu = w.measure();
  require(mu.size() <= dense_limit, "dense oracle limited to " + std::to_string(dense_limit) +
                                        " vertices");
  const auto n = static_cast<Eigen::Index>(mu.size());
  const Eigen::VectorXd inv = measure_power(mu, -1.0);
  Eigen::MatrixXd u = measure_power(mu, 1.0).asDiagonal();
  Eigen::MatrixXd f = u;
  for (const StochasticMatching& m : w.matchings()) {
    Eigen::MatrixXd nmat = (static_cast<double>(w.delta() - 1) / w.delta()) * u +
                           dense_matching(m) / w.delta();
    f = nmat * inv.asDiagonal() * f * inv.asDiagonal() * nmat;
  }
  const Eigen::VectorXd half = measure_power(mu, -0.5);
  Eigen::MatrixXd fbar = half.asDiagonal() * f * half.asDiagonal();
  const Eigen::MatrixXd p = dense_projection(w.state());
  const Eigen::MatrixXd base = p * fbar * p;
  Eigen::MatrixXd walk = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < w.delta(); ++i) walk = walk * base;
  DenseWalk out;
  out.flow = std::move(f);
  out.psi = walk.squaredNorm();
  out.walk = std::move(walk);
  return out;
}

}  // namespace muexp
