#include <gtest/gtest.h>

#include <algorithm>

#include "muexp/cut_player.hpp"
#include "support/generators.hpp"

using namespace muexp;
using namespace muexp::testing;

namespace {

// Subtracts the mu-weighted mean over the terminals of A.
void balance(std::vector<double>& u, const ActiveState& state) {
  double num = 0.0;
  for (Vertex v : state.terminals()) num += state.measure()[v] * u[v];
  const double mean = num / state.total();
  for (Vertex v : state.terminals()) u[v] -= mean;
}

double mass(const std::vector<WeightedVertex>& xs) {
  double s = 0.0;
  for (const auto& x : xs) s += x.weight;
  return s;
}

}  // namespace

TEST(CutPlayer, TwoVertexExample) {
  const ActiveState state(VertexMeasure({1.0, 1.0}), VertexSet::all(2));
  const std::vector<double> u = {-1.0, 1.0};
  const WeightedBipartition bip = rst_partition(state, u);
  EXPECT_EQ(bip.case_taken, 1);
  EXPECT_EQ(bip.eta, 0.0);
  EXPECT_FALSE(bip.flipped);
  ASSERT_EQ(bip.targets.size(), 1u);
  EXPECT_EQ(bip.targets[0].v, 1);
  EXPECT_EQ(bip.targets[0].weight, 1.0);
  ASSERT_EQ(bip.sources.size(), 1u);
  EXPECT_EQ(bip.sources[0].v, 0);
  EXPECT_DOUBLE_EQ(bip.sources[0].weight, 0.25);
  EXPECT_EQ(bip.partial_source, std::optional<Vertex>(0));
  EXPECT_TRUE(check_bipartition(state, u, bip).empty());
}

TEST(CutPlayer, ZeroVectorStillSatisfiesTheMassConditions) {
  const ActiveState state(VertexMeasure::uniform(6), VertexSet::all(6));
  const std::vector<double> u(6, 0.0);
  const WeightedBipartition bip = rst_partition(state, u);
  EXPECT_EQ(bip.case_taken, 1);
  EXPECT_GE(bip.target_mass(), 3.0);
  EXPECT_TRUE(bip.sources.empty());
}

TEST(CutPlayer, RandomProjectionsGiveValidBipartitions) {
  Gen gen(21);
  int partial = 0;
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = 12;
    const VertexMeasure mu = random_measure(n, gen, 0.2, 0.1, 5.0);
    VertexSet active = VertexSet::all(n);
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
      if (coin(gen, 0.2)) active.erase(v);
    const ActiveState state(mu, active);
    if (state.terminals().size() < 2) continue;
    std::vector<double> u(n, 0.0);
    for (Vertex v : state.terminals()) u[v] = uniform_real(gen, -1.0, 1.0) * (coin(gen, 0.1) ? 20.0 : 1.0);
    balance(u, state);

    const WeightedBipartition bip = rst_partition(state, u);
    const auto bad = check_bipartition(state, u, bip, 1e-9, 1e-9);
    EXPECT_TRUE(bad.empty()) << bad.front();

    // Lighter side, in the orientation the player used.
    double light = 0.0;
    for (Vertex v : state.terminals())
      if ((bip.flipped ? -u[v] : u[v]) < 0.0) light += mu[v];
    if (bip.case_taken == 1 && light > state.total() / 8.0) {
      ++partial;
      EXPECT_NEAR(mass(bip.sources), state.total() / 8.0, 1e-12 * state.total());
    }
  }
  EXPECT_GT(partial, 0);
}

TEST(CutPlayer, SpikeTakesTheSecondCase) {
  // Light negative side spread thin, heavy side carrying one spike.
  std::vector<double> values, u;
  for (int i = 0; i < 4; ++i) {
    values.push_back(6.0);
    u.push_back(-1.0);
  }
  values.push_back(1.0);
  u.push_back(24.0);
  for (int i = 0; i < 7; ++i) {
    values.push_back(4.0);
    u.push_back(0.0);
  }
  const ActiveState state{VertexMeasure(values), VertexSet::all(12)};
  const WeightedBipartition bip = rst_partition(state, u);
  ASSERT_EQ(bip.case_taken, 2);
  EXPECT_FALSE(bip.flipped);
  EXPECT_NEAR(bip.eta, 4.0 * 48.0 / 53.0, 1e-12);
  ASSERT_EQ(bip.sources.size(), 1u);
  EXPECT_EQ(bip.sources[0].v, 4);
  EXPECT_EQ(bip.sources[0].weight, 1.0);

  // Heavy side mostly stays among the targets.
  double r = 0.0, r_out = 0.0;
  std::vector<char> is_target(12, 0);
  for (const auto& t : bip.targets) is_target[t.v] = 1;
  for (Vertex v = 0; v < 12; ++v)
    if (u[v] >= 0.0) {
      r += values[v];
      if (!is_target[v]) r_out += values[v];
    }
  EXPECT_LE(r_out, r / 2.0);
  EXPECT_TRUE(check_bipartition(state, u, bip).empty());
}

TEST(CutPlayer, SecondCaseKeepsHalfOfTheHeavySide) {
  Gen gen(22);
  int seen = 0;
  for (int i = 0; i < 400; ++i) {
    // Heavy light side near zero, one spike, and a bulk of small positives.
    const int light = uniform_int(gen, 2, 5), bulk = uniform_int(gen, 4, 8);
    std::vector<double> values, u;
    double light_mass = 0.0;
    for (int k = 0; k < light; ++k) {
      values.push_back(uniform_real(gen, 4.0, 8.0));
      u.push_back(-uniform_real(gen, 0.8, 1.2));
      light_mass += values.back();
    }
    for (int k = 0; k < bulk; ++k) {
      values.push_back(1.1 * light_mass / bulk);
      u.push_back(uniform_real(gen, 0.0, 0.05));
    }
    values.push_back(uniform_real(gen, 0.5, 1.5));
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) sum += values[k] * u[k];
    u.push_back(-sum / values.back());
    const std::size_t n = values.size();
    const VertexMeasure mu(values);
    const ActiveState state(mu, VertexSet::all(n));
    const WeightedBipartition bip = rst_partition(state, u);
    if (bip.case_taken != 2) continue;
    ++seen;
    const double sign = bip.flipped ? -1.0 : 1.0;
    double r = 0.0, r_out = 0.0;
    for (Vertex v : state.terminals()) {
      const double x = sign * u[v];
      if (x < 0.0) continue;
      r += mu[v];
      if (x > sign * bip.eta) r_out += mu[v];
    }
    EXPECT_LE(r_out, r / 2.0 + 1e-12);
  }
  EXPECT_GT(seen, 0);
}

TEST(CutPlayer, Deterministic) {
  Gen gen(23);
  const VertexMeasure mu = random_measure(10, gen, 0.0, 0.5, 2.0);
  const ActiveState state(mu, VertexSet::all(10));
  std::vector<double> u(10);
  for (double& x : u) x = uniform_real(gen, -1.0, 1.0);
  balance(u, state);
  const WeightedBipartition a = rst_partition(state, u), b = rst_partition(state, u);
  ASSERT_EQ(a.sources.size(), b.sources.size());
  ASSERT_EQ(a.targets.size(), b.targets.size());
  for (std::size_t i = 0; i < a.sources.size(); ++i) {
    EXPECT_EQ(a.sources[i].v, b.sources[i].v);
    EXPECT_EQ(a.sources[i].weight, b.sources[i].weight);
  }
  for (std::size_t i = 0; i < a.targets.size(); ++i) EXPECT_EQ(a.targets[i].v, b.targets[i].v);
}

TEST(CutPlayer, RejectsUnbalancedProjection) {
  const ActiveState state(VertexMeasure::uniform(3), VertexSet::all(3));
  EXPECT_THROW(rst_partition(state, std::vector<double>{1.0, 1.0, 1.0}), InputError);
  EXPECT_THROW(rst_partition(state, std::vector<double>{0.0, 0.0}), InputError);
  const ActiveState empty(VertexMeasure::uniform(3), VertexSet(3));
  EXPECT_THROW(rst_partition(empty, std::vector<double>{0.0, 0.0, 0.0}), InputError);
}

TEST(CheckBipartition, FlagsViolations) {
  const ActiveState state(VertexMeasure({1.0, 1.0}), VertexSet::all(2));
  const std::vector<double> u = {-1.0, 1.0};
  WeightedBipartition bip = rst_partition(state, u);
  bip.sources[0].weight = 0.9;
  const auto bad = check_bipartition(state, u, bip);
  EXPECT_TRUE(std::any_of(bad.begin(), bad.end(), [](const std::string& s) { return s.rfind("mass", 0) == 0; }));
}
