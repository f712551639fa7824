#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "egodist/error.hpp"

namespace egodist {

using NodeId = std::uint32_t;

struct WeightedEdge {
  NodeId u;
  NodeId v;
  double w;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Immutable undirected graph with strictly positive edge weights.
///
/// Adjacency is stored CSR-style: for node i, neighbors(i) is the ascending
/// list of adjacent node ids and weights(i) the matching weights. Each
/// undirected edge appears once in each endpoint's list. Strength s_i is the
/// left-to-right sum of weights(i) starting from 0.0; kernels that need a
/// bit-identical strength must sum in the same order.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates and builds. Throws Error with kind SelfLoop, DuplicateEdge,
  /// NonPositiveWeight, NodeOutOfRange or EmptyGraph (n == 0).
  static WeightedGraph build(std::size_t n, std::span<const WeightedEdge> edges);

  std::size_t node_count() const noexcept { return strength_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  /// rho = 2L / (N(N-1)); zero for a single node.
  double density() const noexcept {
    const double n = static_cast<double>(node_count());
    if (node_count() < 2) return 0.0;
    return 2.0 * static_cast<double>(edge_count()) / (n * (n - 1.0));
  }

  std::size_t degree(NodeId i) const noexcept { return offsets_[i + 1] - offsets_[i]; }
  double strength(NodeId i) const noexcept { return strength_[i]; }
  std::span<const double> strengths() const noexcept { return strength_; }

  /// Largest edge weight; 0 for an edgeless graph.
  double max_weight() const noexcept { return max_weight_; }
  double total_weight() const noexcept { return total_weight_; }

  std::span<const NodeId> neighbors(NodeId i) const noexcept {
    return {targets_.data() + offsets_[i], degree(i)};
  }
  std::span<const double> weights(NodeId i) const noexcept {
    return {weights_.data() + offsets_[i], degree(i)};
  }

  /// Weight of edge (i, j), or 0 when absent.
  double weight(NodeId i, NodeId j) const noexcept {
    auto nb = neighbors(i);
    auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) return 0.0;
    return weights(i)[static_cast<std::size_t>(it - nb.begin())];
  }

  bool has_edge(NodeId i, NodeId j) const noexcept { return weight(i, j) > 0.0; }

  /// All edges with u < v, sorted by (u, v).
  std::vector<WeightedEdge> edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(edge_count());
    for (NodeId i = 0; i < node_count(); ++i) {
      auto nb = neighbors(i);
      auto wt = weights(i);
      for (std::size_t k = 0; k < nb.size(); ++k)
        if (nb[k] > i) out.push_back({i, nb[k], wt[k]});
    }
    return out;
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_ &&
           a.weights_ == b.weights_;
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  std::vector<double> strength_;
  double max_weight_ = 0.0;
  double total_weight_ = 0.0;
};

namespace detail {

inline std::string edge_text(const WeightedEdge& e) {
  return "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ", " +
         std::to_string(e.w) + ")";
}

}  // namespace detail

inline WeightedGraph WeightedGraph::build(std::size_t n,
                                          std::span<const WeightedEdge> edges) {
  if (n == 0) throw Error(ErrorKind::EmptyGraph, "node count must be positive");
  if (n > std::size_t{UINT32_MAX})
    throw Error(ErrorKind::InvalidArgument, "node count exceeds 32-bit ids");

  struct Half {
    NodeId from, to;
    double w;
  };
  std::vector<Half> halves;
  halves.reserve(2 * edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n)
      throw Error(ErrorKind::NodeOutOfRange, "edge " + detail::edge_text(e) +
                                                 " with n=" + std::to_string(n));
    if (e.u == e.v) throw Error(ErrorKind::SelfLoop, "edge " + detail::edge_text(e));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw Error(ErrorKind::NonPositiveWeight, "edge " + detail::edge_text(e));
    halves.push_back({e.u, e.v, e.w});
    halves.push_back({e.v, e.u, e.w});
  }
  std::sort(halves.begin(), halves.end(), [](const Half& a, const Half& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  for (std::size_t k = 1; k < halves.size(); ++k) {
    if (halves[k].from == halves[k - 1].from && halves[k].to == halves[k - 1].to) {
      const WeightedEdge e{std::min(halves[k].from, halves[k].to),
                           std::max(halves[k].from, halves[k].to), halves[k].w};
      throw Error(ErrorKind::DuplicateEdge, "edge " + detail::edge_text(e));
    }
  }

  WeightedGraph g;
  g.offsets_.assign(n + 1, 0);
  g.targets_.resize(halves.size());
  g.weights_.resize(halves.size());
  for (std::size_t k = 0; k < halves.size(); ++k) {
    ++g.offsets_[halves[k].from + 1];
    g.targets_[k] = halves[k].to;
    g.weights_[k] = halves[k].w;
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  g.strength_.assign(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    double s = 0.0;
    for (double w : g.weights(i)) s += w;
    g.strength_[i] = s;
  }
  for (const auto& e : edges) {
    g.max_weight_ = std::max(g.max_weight_, e.w);
  }
  // Edge-order independent: sum over the canonical (u < v) ordering.
  for (NodeId i = 0; i < n; ++i) {
    auto nb = g.neighbors(i);
    auto wt = g.weights(i);
    for (std::size_t k = 0; k < nb.size(); ++k)
      if (nb[k] > i) g.total_weight_ += wt[k];
  }
  return g;
}

inline WeightedGraph build_graph(std::size_t n, std::span<const WeightedEdge> edges) {
  return WeightedGraph::build(n, edges);
}

inline WeightedGraph build_graph(std::size_t n, std::initializer_list<WeightedEdge> edges) {
  return WeightedGraph::build(n, std::span<const WeightedEdge>(edges.begin(), edges.size()));
}

}  // namespace egodist
