#include <gtest/gtest.h>

#include <random>

#include "egodist/distance_matrix.hpp"
#include "oracles.hpp"

using namespace egodist;

namespace {

EgonetFeatureTable single(double d) { return {{d}, {0.0}, {0.0}}; }

}  // namespace

TEST(EgoDistance, PinnedSingleNodes) {
  EgoProfile a(single(0.0), 0.01), b(single(1.0), 0.01);
  a.prepare(EgoMetric::Dd);
  b.prepare(EgoMetric::Dd);
  EXPECT_DOUBLE_EQ(ego_distance(a, b, EgoMetric::Dd), 1.0);
}

TEST(EgoDistance, SelfDistanceIsZero) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 10; ++t) {
    const auto g = oracle::mixed_graph(rng, 60);
    for (EgoMetric m : kAllEgoMetrics) EXPECT_EQ(ego_distance(g, g, m), 0.0);
  }
}

TEST(EgoDistance, MetricProperties) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 15; ++t) {
    const auto a = oracle::mixed_graph(rng, 60);
    const auto b = oracle::mixed_graph(rng, 60);
    const auto c = oracle::mixed_graph(rng, 60);
    EgoProfile pa(a, 0.01), pb(b, 0.01), pc(c, 0.01);
    for (EgoMetric m : kAllEgoMetrics) {
      pa.prepare(m);
      pb.prepare(m);
      pc.prepare(m);
      const double ab = ego_distance(pa, pb, m), ba = ego_distance(pb, pa, m);
      const double bc = ego_distance(pb, pc, m), ac = ego_distance(pa, pc, m);
      EXPECT_EQ(ab, ba);
      for (double x : {ab, bc, ac}) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
      }
      EXPECT_LE(ac, ab + bc + 1e-12);
    }
    const double sum = ego_distance(pa, pb, EgoMetric::Dsum);
    const double parts = (ego_distance(pa, pb, EgoMetric::Dd) + ego_distance(pa, pb, EgoMetric::Dc) +
                          ego_distance(pa, pb, EgoMetric::Dp)) / 3.0;
    EXPECT_NEAR(sum, parts, 1e-12);
  }
}

TEST(EgoDistance, DeltaInsensitivity) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const auto a = generate({kAllModels[t % 12], 300, 0.02, rng()});
    const auto b = generate({kAllModels[(t * 5 + 3) % 12], 300, 0.02, rng()});
    for (EgoMetric m : kAllEgoMetrics)
      EXPECT_NEAR(ego_distance(a, b, m, 0.01), ego_distance(a, b, m, 0.02), 0.05)
          << to_string(m);
  }
}

TEST(EgoDistance, DeltaMismatchAndUnpreparedProfile) {
  const auto g = build_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  EgoProfile a(g, 0.01), b(g, 0.02);
  a.prepare(EgoMetric::Dd);
  b.prepare(EgoMetric::Dd);
  EXPECT_THROW(ego_distance(a, b, EgoMetric::Dd), Error);
  EXPECT_THROW(ego_distance(a, a, EgoMetric::Dcp), Error);
  EXPECT_FALSE(parse_ego_metric("xyz").has_value());
  EXPECT_THROW(parse_metric("xyz"), Error);
}

TEST(EgoDistance, CompleteGraphsHaveZeroDp) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  auto complete = [&](std::size_t n) {
    std::vector<WeightedEdge> edges;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j, u(rng)});
    return build_graph(n, edges);
  };
  EXPECT_EQ(ego_distance(complete(10), complete(17), EgoMetric::Dp), 0.0);
}

TEST(PairwiseDistances, SmallPools) {
  const auto g = build_graph(4, {{0, 1, 1.0}, {1, 2, 3.0}, {2, 3, 1.0}});
  {
    std::vector<WeightedGraph> pool{g};
    const auto m = pairwise_distances(std::span<const WeightedGraph>(pool), Metric::Ddcp);
    ASSERT_EQ(m.values.size(), 1u);
    EXPECT_EQ(m(0, 0), 0.0);
  }
  {
    std::vector<WeightedGraph> pool{g, g};
    const auto m = pairwise_distances(std::span<const WeightedGraph>(pool), Metric::Ddcp);
    EXPECT_EQ(m(0, 1), 0.0);
    EXPECT_EQ(m(1, 0), 0.0);
  }
}

TEST(PairwiseDistances, MatchesSinglePairCalls) {
  std::mt19937_64 rng(14);
  std::vector<WeightedGraph> pool;
  for (int k = 0; k < 5; ++k) pool.push_back(oracle::mixed_graph(rng, 50));
  for (Metric metric : kAllMetrics) {
    PairwiseOptions opt;
    opt.workers = 3;
    const auto m = pairwise_distances(std::span<const WeightedGraph>(pool), metric, opt);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      EXPECT_EQ(m(i, i), 0.0);
      for (std::size_t j = 0; j < pool.size(); ++j) {
        EXPECT_EQ(m(i, j), m(j, i));
        if (i != j) {
          EXPECT_NEAR(m(i, j), graph_distance(pool[i], pool[j], metric), 1e-12);
        }
      }
    }
  }
}

TEST(PairwiseDistances, TilingAndWorkersDoNotChangeValues) {
  std::mt19937_64 rng(15);
  std::vector<WeightedGraph> pool;
  for (int k = 0; k < 9; ++k) pool.push_back(generate({kAllModels[k], 400, 0.02, rng()}));
  PairwiseOptions one;
  const auto a = pairwise_distances(std::span<const WeightedGraph>(pool), Metric::Ddcp, one);
  PairwiseOptions tiled;
  tiled.workers = 4;
  tiled.cache_budget_bytes = 1;  // one graph per tile
  const auto b = pairwise_distances(std::span<const WeightedGraph>(pool), Metric::Ddcp, tiled);
  EXPECT_EQ(a.values, b.values);
}

TEST(PairwiseDistances, ErrorsNameTheGraph) {
  std::vector<WeightedGraph> pool;
  EXPECT_THROW(pairwise_distances(std::span<const WeightedGraph>(pool), Metric::Dd), Error);
}

TEST(DistanceMatrix, CsvLayout) {
  std::vector<WeightedGraph> pool{build_graph(2, {{0, 1, 1.0}}),
                                  build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}})};
  const auto m = pairwise_distances(std::span<const WeightedGraph>(pool), Metric::Dd, {}, {"a", "b"});
  std::ostringstream out;
  write_distance_matrix_csv(m, out);
  EXPECT_EQ(out.str().substr(0, 4), "a,b\n");
}
