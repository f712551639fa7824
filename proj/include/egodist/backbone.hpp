#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egodist/distance_matrix.hpp"
#include "egodist/graph.hpp"
#include "egodist/parallel.hpp"

namespace egodist {

enum class FilterKind { HardThreshold, Disparity };

inline FilterKind parse_filter_kind(std::string_view s) {
  if (s == "hard") return FilterKind::HardThreshold;
  if (s == "disparity") return FilterKind::Disparity;
  throw Error(ErrorKind::InvalidArgument, "filter kind must be hard or disparity");
}

constexpr std::string_view to_string(FilterKind k) noexcept {
  return k == FilterKind::HardThreshold ? "hard" : "disparity";
}

/// Hard threshold keeps w_ij >= gamma * w_max; the disparity filter keeps
/// edges whose null-model p-value is below alpha at one endpoint or more.
struct FilterSpec {
  FilterKind kind = FilterKind::HardThreshold;
  double param = 0.5;

  void validate() const {
    if (!(param > 0.0 && param < 1.0))
      throw Error(ErrorKind::InvalidArgument,
                  std::string(to_string(kind)) + " parameter must lie in (0, 1)");
  }
};

/// Significance of edge (i, j) seen from endpoint i under uniform random
/// splitting of s_i over m_i edges: (1 - w_ij / s_i)^(m_i - 1). Degree-1
/// endpoints give 1 (never significant).
inline double disparity_pvalue(const WeightedGraph& g, NodeId i, double w) {
  const std::size_t m = g.degree(i);
  if (m <= 1) return 1.0;
  const double x = std::max(0.0, 1.0 - w / g.strength(i));
  return std::pow(x, static_cast<double>(m - 1));
}

/// Same node set, retained edges keep their weights.
inline WeightedGraph apply_filter(const WeightedGraph& g, const FilterSpec& spec) {
  spec.validate();
  std::vector<WeightedEdge> kept;
  const double cut = spec.param * g.max_weight();
  for (const auto& e : g.edges()) {
    bool keep;
    if (spec.kind == FilterKind::HardThreshold) {
      keep = e.w >= cut;
    } else {
      const bool leaf_pair = g.degree(e.u) == 1 && g.degree(e.v) == 1;
      keep = leaf_pair || disparity_pvalue(g, e.u, e.w) < spec.param ||
             disparity_pvalue(g, e.v, e.w) < spec.param;
    }
    if (keep) kept.push_back(e);
  }
  return build_graph(g.node_count(), kept);
}

/// R = 1 - sum(w^f) / sum(w). Rejects a `filtered` graph that is not an
/// edge subset of `original` with identical weights.
inline double removed_weight_fraction(const WeightedGraph& original, const WeightedGraph& filtered) {
  if (original.node_count() != filtered.node_count())
    throw Error(ErrorKind::NotSubgraph, "node counts differ");
  for (const auto& e : filtered.edges())
    if (original.weight(e.u, e.v) != e.w)
      throw Error(ErrorKind::NotSubgraph, "edge " + detail::edge_text(e) + " not in original");
  if (original.total_weight() == 0.0) return 0.0;
  return std::clamp(1.0 - filtered.total_weight() / original.total_weight(), 0.0, 1.0);
}

struct SweepPoint {
  double param;
  double removed_weight;
  double distance;
  std::size_t edges;
};

/// Filters `g` at every grid value and measures the removed weight and the
/// distance of each backbone from the original.
inline std::vector<SweepPoint> pruning_sweep(const WeightedGraph& g, FilterKind kind,
                                             std::span<const double> grid,
                                             Metric metric = Metric::Ddcp, double delta = 0.01,
                                             std::size_t workers = 1) {
  for (double x : grid) FilterSpec{kind, x}.validate();
  std::vector<SweepPoint> out(grid.size());
  const auto ego = as_ego_metric(metric);
  std::optional<EgoProfile> base;
  if (ego) {
    base.emplace(g, delta);
    base->prepare(*ego);
  }
  parallel_for(grid.size(), workers, [&](std::size_t k) {
    const auto filtered = apply_filter(g, {kind, grid[k]});
    double dist;
    if (ego) {
      EgoProfile p(filtered, delta);
      p.prepare(*ego);
      dist = ego_distance(p, *base, *ego);
    } else {
      dist = graph_distance(filtered, g, metric, delta);
    }
    out[k] = {grid[k], removed_weight_fraction(g, filtered), dist, filtered.edge_count()};
  });
  return out;
}

inline void write_sweep_csv(std::span<const SweepPoint> pts, std::ostream& out,
                            const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "param,removed_weight,distance,edges\n";
  for (const auto& p : pts)
    out << detail::format_double(p.param) << ',' << detail::format_double(p.removed_weight)
        << ',' << detail::format_double(p.distance) << ',' << p.edges << '\n';
}

}  // namespace egodist
