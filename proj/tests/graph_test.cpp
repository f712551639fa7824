#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "egodist/edge_list.hpp"
#include "egodist/graph.hpp"
#include "oracles.hpp"

using namespace egodist;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Graph, TriangleBasics) {
  const auto g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_DOUBLE_EQ(g.density(), 1.0);
  for (NodeId i = 0; i < 3; ++i) EXPECT_EQ(g.strength(i), 2.0);
}

TEST(Graph, SingleEdge) {
  const auto g = build_graph(2, {{1, 0, 5.0}});
  EXPECT_EQ(g.max_weight(), 5.0);
  EXPECT_EQ(g.strength(0), 5.0);
  EXPECT_EQ(g.strength(1), 5.0);
  EXPECT_EQ(g.density(), 1.0);
  EXPECT_EQ(g.weight(0, 1), 5.0);
  EXPECT_EQ(g.weight(1, 0), 5.0);
}

TEST(Graph, RejectsInvalidInput) {
  EXPECT_EQ(kind_of([] { build_graph(3, {{0, 0, 1.0}}); }), ErrorKind::SelfLoop);
  EXPECT_EQ(kind_of([] { build_graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}); }), ErrorKind::DuplicateEdge);
  EXPECT_EQ(kind_of([] { build_graph(3, {{0, 1, 0.0}}); }), ErrorKind::NonPositiveWeight);
  EXPECT_EQ(kind_of([] { build_graph(3, {{0, 1, -1.0}}); }), ErrorKind::NonPositiveWeight);
  EXPECT_EQ(kind_of([] { build_graph(3, {{0, 1, std::nan("")}}); }), ErrorKind::NonPositiveWeight);
  EXPECT_EQ(kind_of([] { build_graph(3, {{0, 3, 1.0}}); }), ErrorKind::NodeOutOfRange);
  EXPECT_EQ(kind_of([] { build_graph(0, {}); }), ErrorKind::EmptyGraph);
}

TEST(Graph, IsolatedNodesAllowed) {
  const auto g = build_graph(4, {{0, 1, 2.0}});
  EXPECT_EQ(g.degree(3), 0u);
  EXPECT_EQ(g.strength(3), 0.0);
  EXPECT_FALSE(g.has_edge(2, 3));
}

TEST(Graph, NeighborsSortedWithParallelWeights) {
  const auto g = build_graph(5, {{3, 0, 1.5}, {0, 4, 2.5}, {0, 1, 0.5}});
  const auto nb = g.neighbors(0);
  const auto w = g.weights(0);
  ASSERT_EQ(nb.size(), 3u);
  EXPECT_EQ(nb[0], 1u);
  EXPECT_EQ(nb[1], 3u);
  EXPECT_EQ(nb[2], 4u);
  EXPECT_EQ(w[0], 0.5);
  EXPECT_EQ(w[1], 1.5);
  EXPECT_EQ(w[2], 2.5);
}

TEST(Graph, DensityAndStrengthIdentities) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto g = oracle::mixed_graph(rng, 40);
    const double n = static_cast<double>(g.node_count());
    double mean_degree = 0.0, strength_sum = 0.0, weight_sum = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
      mean_degree += static_cast<double>(g.degree(i));
      strength_sum += g.strength(i);
    }
    mean_degree /= n;
    for (const auto& e : g.edges()) weight_sum += e.w;
    EXPECT_NEAR(mean_degree, g.density() * (n - 1.0), 1e-12);
    EXPECT_NEAR(strength_sum, 2.0 * weight_sum, 1e-12 * std::max(1.0, strength_sum));
  }
}

TEST(EdgeList, ParsesExample) {
  std::istringstream in("# nodes=2\n0 1 2.5\n");
  const auto g = read_edge_list(in);
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.weight(0, 1), 2.5);
}

TEST(EdgeList, AcceptsCrlfAndComments) {
  std::istringstream in("# nodes=3\r\n# generated by hand\r\n0 1 1\r\n\r\n1 2 3e-1\r\n");
  const auto g = read_edge_list(in);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.weight(2, 1), 0.3);
}

TEST(EdgeList, Errors) {
  auto parse = [](const char* text) {
    std::istringstream in(text);
    return read_edge_list(in);
  };
  EXPECT_EQ(kind_of([&] { parse("# nodes=2\n0 1 -1\n"); }), ErrorKind::NonPositiveWeight);
  EXPECT_EQ(kind_of([&] { parse("0 1 1\n"); }), ErrorKind::MissingHeader);
  EXPECT_EQ(kind_of([&] { parse(""); }), ErrorKind::MissingHeader);
  EXPECT_EQ(kind_of([&] { parse("# nodes=2\n0 1\n"); }), ErrorKind::MalformedLine);
  EXPECT_EQ(kind_of([&] { parse("# nodes=2\n0 x 1\n"); }), ErrorKind::MalformedLine);
  EXPECT_EQ(kind_of([&] { parse("# nodes=2\n0 2 1\n"); }), ErrorKind::NodeOutOfRange);
  EXPECT_EQ(kind_of([&] { parse("# nodes=2\n1 1 1\n"); }), ErrorKind::SelfLoop);
  EXPECT_EQ(kind_of([&] { parse("# nodes=2\n0 1 1\n1 0 1\n"); }), ErrorKind::DuplicateEdge);
  EXPECT_EQ(kind_of([&] { parse("# nodes=0\n"); }), ErrorKind::MalformedLine);
}

TEST(EdgeList, RoundTripIsBitExact) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_graph(rng, 25, 0.3, oracle::WeightKind::Multiscale);
    std::stringstream buf;
    write_edge_list(g, buf);
    const auto back = read_edge_list(buf);
    EXPECT_TRUE(back == g);
  }
  const auto k3 = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  std::stringstream buf;
  write_edge_list(k3, buf);
  EXPECT_TRUE(read_edge_list(buf) == k3);
}

TEST(EdgeList, Symmetrize) {
  const char* text = "# nodes=3\n0 1 2\n1 0 3\n1 2 1\n2 2 5\n";
  {
    std::istringstream in(text);
    const auto g = symmetrize_edge_list(in, SymmetrizeMode::Sum);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.weight(0, 1), 5.0);
    EXPECT_EQ(g.weight(1, 2), 1.0);
  }
  {
    std::istringstream in(text);
    const auto g = symmetrize_edge_list(in, SymmetrizeMode::Max);
    EXPECT_EQ(g.weight(0, 1), 3.0);
  }
}
