#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "egodist/edge_list.hpp"
#include "egodist/graph.hpp"
#include "egodist/parallel.hpp"

namespace egodist {

/// Per-node egonet features, each in [0, 1]:
///   d  normalized weighted degree (min-max rescaled strength)
///   c  weighted clustering coefficient (triangle intensity / w_max)
///   p  egonet persistence (one-step stay probability of a strength-driven
///      random walk started inside the egonet)
struct EgonetFeatureTable {
  std::vector<double> d;
  std::vector<double> c;
  std::vector<double> p;

  std::size_t size() const noexcept { return d.size(); }
};

/// d_i = (s_i - s_min) / (s_max - s_min). When every strength is equal
/// (including the edgeless graph) all d_i are 0.
inline std::vector<double> normalized_weighted_degree(const WeightedGraph& g) {
  const auto s = g.strengths();
  std::vector<double> d(s.size(), 0.0);
  if (s.empty()) return d;
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  const double smin = *lo, smax = *hi;
  if (!(smax > smin)) return d;
  const double span = smax - smin;
  for (std::size_t i = 0; i < s.size(); ++i)
    d[i] = std::clamp((s[i] - smin) / span, 0.0, 1.0);
  return d;
}

namespace detail {

struct EgoScan {
  double clustering = 0.0;
  double persistence = 0.0;
};

// One pass over the egonet of i. For every neighbor j the sorted lists N(j)
// and N(i) are merged: each common neighbor k contributes w_jk to the
// internal strength of j, and (when k > j, so every unordered pair {j, k} is
// visited once) a triangle term (w_ij w_jk w_ki)^(1/3).
//
// Internal strengths are summed along N(j) in list order, the order used for
// s_j itself, so a node whose whole neighborhood lies inside E_i gets
// s_j^int == s_j bit for bit; on complete graphs p_i is exactly 1.
template <bool WantClustering, bool WantPersistence>
EgoScan scan_egonet(const WeightedGraph& g, NodeId i) {
  EgoScan out;
  const auto ni = g.neighbors(i);
  const auto wi = g.weights(i);
  const std::size_t m = ni.size();
  if (m == 0) return out;

  double triangles = 0.0;
  double internal = 0.0;
  double total = 0.0;
  bool ego_done = false;  // i itself is visited at its sorted slot in E_i

  for (std::size_t a = 0; a < m; ++a) {
    const NodeId j = ni[a];
    if constexpr (WantPersistence) {
      if (!ego_done && i < j) {
        internal += g.strength(i);
        total += g.strength(i);
        ego_done = true;
      }
    }
    const auto nj = g.neighbors(j);
    const auto wj = g.weights(j);
    double s_int = 0.0;
    std::size_t b = 0;
    for (std::size_t q = 0; q < nj.size(); ++q) {
      const NodeId k = nj[q];
      if (k == i) {
        if constexpr (WantPersistence) s_int += wj[q];
        continue;
      }
      while (b < m && ni[b] < k) ++b;
      if (b == m) {
        if constexpr (!WantPersistence) break;
        continue;
      }
      if (ni[b] != k) continue;
      if constexpr (WantPersistence) s_int += wj[q];
      if constexpr (WantClustering) {
        if (k > j) triangles += std::cbrt(wi[a] * wj[q] * wi[b]);
      }
    }
    if constexpr (WantPersistence) {
      internal += s_int;
      total += g.strength(j);
    }
  }
  if constexpr (WantPersistence) {
    if (!ego_done) {
      internal += g.strength(i);
      total += g.strength(i);
    }
    out.persistence = total > 0.0 ? std::clamp(internal / total, 0.0, 1.0) : 0.0;
  }
  if constexpr (WantClustering) {
    if (m >= 2) {
      const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
      out.clustering = std::clamp(triangles / g.max_weight() / pairs, 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace detail

/// c_i = 2 / (m_i (m_i - 1)) * sum over unordered neighbor pairs {j, k}
/// of (w_ij w_jk w_ki)^(1/3) / w_max; 0 when m_i <= 1.
inline std::vector<double> weighted_clustering(const WeightedGraph& g,
                                               std::size_t workers = 1) {
  std::vector<double> c(g.node_count(), 0.0);
  parallel_for(g.node_count(), workers, [&](std::size_t i) {
    c[i] = detail::scan_egonet<true, false>(g, static_cast<NodeId>(i)).clustering;
  });
  return c;
}

/// p_i = sum_{j in E_i} s_j^int / sum_{j in E_i} s_j with E_i = {i} + N(i);
/// 0 for isolated nodes.
inline std::vector<double> egonet_persistence(const WeightedGraph& g,
                                              std::size_t workers = 1) {
  std::vector<double> p(g.node_count(), 0.0);
  parallel_for(g.node_count(), workers, [&](std::size_t i) {
    p[i] = detail::scan_egonet<false, true>(g, static_cast<NodeId>(i)).persistence;
  });
  return p;
}

inline EgonetFeatureTable compute_features(const WeightedGraph& g, std::size_t workers = 1) {
  EgonetFeatureTable t;
  t.d = normalized_weighted_degree(g);
  t.c.assign(g.node_count(), 0.0);
  t.p.assign(g.node_count(), 0.0);
  parallel_for(g.node_count(), workers, [&](std::size_t i) {
    const auto scan = detail::scan_egonet<true, true>(g, static_cast<NodeId>(i));
    t.c[i] = scan.clustering;
    t.p[i] = scan.persistence;
  });
  return t;
}

/// CSV with columns node,d,c,p (17 significant digits).
inline void write_features_csv(const EgonetFeatureTable& t, std::ostream& out) {
  out << "node,d,c,p\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out << i << ',' << detail::format_double(t.d[i]) << ','
        << detail::format_double(t.c[i]) << ',' << detail::format_double(t.p[i]) << '\n';
}

}  // namespace egodist
