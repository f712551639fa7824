#include <gtest/gtest.h>

#include <random>
#include <set>

#include "egodist/backbone.hpp"
#include "oracles.hpp"

using namespace egodist;

TEST(Filter, PermissiveLimitsRecoverOriginal) {
  std::mt19937_64 rng(1);
  const auto g = oracle::random_graph(rng, 200, 0.05, oracle::WeightKind::Multiscale);
  EXPECT_TRUE(apply_filter(g, {FilterKind::HardThreshold, 1e-300}) == g);
  const auto er = generate({Model::ER_R, 300, 0.02, 3});
  EXPECT_TRUE(apply_filter(er, {FilterKind::Disparity, 1.0 - 1e-15}) == er);
}

TEST(Filter, RejectsParameterOutsideUnitInterval) {
  const auto g = build_graph(2, {{0, 1, 1.0}});
  for (double bad : {0.0, 1.0, -0.5, 2.0})
    for (auto kind : {FilterKind::HardThreshold, FilterKind::Disparity})
      EXPECT_THROW(apply_filter(g, {kind, bad}), Error);
  EXPECT_THROW(parse_filter_kind("polya"), Error);
}

TEST(Filter, HardThresholdKeepsHeavyEdgesAndNests) {
  std::mt19937_64 rng(2);
  const auto g = oracle::random_graph(rng, 150, 0.1, oracle::WeightKind::Uniform);
  std::set<std::pair<NodeId, NodeId>> previous;
  bool first = true;
  for (double gamma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto f = apply_filter(g, {FilterKind::HardThreshold, gamma});
    EXPECT_EQ(f.node_count(), g.node_count());
    std::set<std::pair<NodeId, NodeId>> now;
    for (const auto& e : f.edges()) {
      EXPECT_GE(e.w, gamma * g.max_weight());
      EXPECT_EQ(g.weight(e.u, e.v), e.w);
      now.insert({e.u, e.v});
    }
    std::size_t expected = 0;
    for (const auto& e : g.edges()) expected += e.w >= gamma * g.max_weight();
    EXPECT_EQ(f.edge_count(), expected);
    if (!first) {
      EXPECT_TRUE(std::includes(previous.begin(), previous.end(), now.begin(), now.end()));
    }
    previous = now;
    first = false;
  }
}

TEST(Filter, DisparityKeptEdgesAreSignificant) {
  std::mt19937_64 rng(3);
  const auto g = oracle::random_graph(rng, 150, 0.1, oracle::WeightKind::Multiscale);
  for (double alpha : {0.01, 0.05, 0.3}) {
    const auto f = apply_filter(g, {FilterKind::Disparity, alpha});
    for (const auto& e : g.edges()) {
      const double pu = std::pow(1.0 - e.w / g.strength(e.u), static_cast<double>(g.degree(e.u) - 1));
      const double pv = std::pow(1.0 - e.w / g.strength(e.v), static_cast<double>(g.degree(e.v) - 1));
      const bool significant = (g.degree(e.u) > 1 && pu < alpha) || (g.degree(e.v) > 1 && pv < alpha);
      EXPECT_EQ(f.has_edge(e.u, e.v), significant);
    }
  }
}

TEST(Filter, DisparityClosedForm) {
  // Star: centre has 3 edges of weights 1, 1, 8 (s = 10).
  const auto g = build_graph(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 8.0}});
  EXPECT_DOUBLE_EQ(disparity_pvalue(g, 0, 8.0), 0.2 * 0.2);
  EXPECT_DOUBLE_EQ(disparity_pvalue(g, 0, 1.0), 0.9 * 0.9);
  EXPECT_EQ(disparity_pvalue(g, 1, 1.0), 1.0);
  const auto f = apply_filter(g, {FilterKind::Disparity, 0.05});
  EXPECT_EQ(f.edge_count(), 1u);
  EXPECT_TRUE(f.has_edge(0, 3));
  const auto pair = build_graph(2, {{0, 1, 3.0}});
  EXPECT_EQ(apply_filter(pair, {FilterKind::Disparity, 0.01}).edge_count(), 1u);
}

TEST(RemovedWeight, Examples) {
  const auto g = build_graph(3, {{0, 1, 3.0}, {1, 2, 1.0}});
  EXPECT_EQ(removed_weight_fraction(g, g), 0.0);
  EXPECT_EQ(removed_weight_fraction(g, build_graph(3, {})), 1.0);
  EXPECT_DOUBLE_EQ(removed_weight_fraction(g, build_graph(3, {{0, 1, 3.0}})), 0.25);
  EXPECT_THROW(removed_weight_fraction(g, build_graph(3, {{0, 2, 3.0}})), Error);
  EXPECT_THROW(removed_weight_fraction(g, build_graph(3, {{0, 1, 2.0}})), Error);
  EXPECT_THROW(removed_weight_fraction(g, build_graph(4, {})), Error);
}

TEST(Sweep, PermissivePointIsOrigin) {
  const auto g = generate({Model::BA_R, 300, 0.02, 2});
  const std::vector<double> grid{1e-12, 0.2, 0.5};
  const auto pts = pruning_sweep(g, FilterKind::HardThreshold, grid, Metric::Ddcp, 0.01, 2);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0].removed_weight, 0.0);
  EXPECT_EQ(pts[0].distance, 0.0);
  EXPECT_EQ(pts[0].edges, g.edge_count());
  EXPECT_LE(pts[1].removed_weight, pts[2].removed_weight);
  for (const auto& p : pts) EXPECT_EQ(p.distance, graph_distance(apply_filter(g, {FilterKind::HardThreshold, p.param}), g, Metric::Ddcp));
  const auto spec = pruning_sweep(g, FilterKind::Disparity, grid, Metric::SpL);
  EXPECT_EQ(spec.size(), 3u);
}
