#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egodist/benchmark_distances.hpp"
#include "egodist/edge_list.hpp"
#include "egodist/ego_distance.hpp"
#include "egodist/parallel.hpp"

namespace egodist {

/// Every graph distance the toolkit can compute: the eight ego-distances
/// plus the global-clustering and spectral benchmarks.
enum class Metric { Dd, Dc, Dp, Dsum, Dcp, Ddc, Ddp, Ddcp, Cglobal, SpW, SpL };

inline constexpr std::array<Metric, 11> kAllMetrics = {
    Metric::Dd,  Metric::Dc,  Metric::Dp,   Metric::Dsum,    Metric::Dcp, Metric::Ddc,
    Metric::Ddp, Metric::Ddcp, Metric::Cglobal, Metric::SpW, Metric::SpL};

inline std::optional<EgoMetric> as_ego_metric(Metric m) {
  if (m == Metric::Cglobal || m == Metric::SpW || m == Metric::SpL) return std::nullopt;
  return static_cast<EgoMetric>(static_cast<int>(m));
}

constexpr std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::Cglobal: return "cglobal";
    case Metric::SpW: return "spw";
    case Metric::SpL: return "spl";
    default: return to_string(static_cast<EgoMetric>(static_cast<int>(m)));
  }
}

inline Metric parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics)
    if (to_string(m) == name) return m;
  throw Error(ErrorKind::UnknownMetric,
              "'" + std::string(name) + "' (expected d,c,p,sum,cp,dc,dp,dcp,cglobal,spw,spl)");
}

inline std::vector<Metric> parse_metric_list(std::string_view csv) {
  std::vector<Metric> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    auto item = detail::trim(csv.substr(start, end - start));
    if (!item.empty()) out.push_back(parse_metric(item));
    start = end + 1;
  }
  if (out.empty()) throw Error(ErrorKind::UnknownMetric, "empty metric list");
  return out;
}

/// Symmetric pairwise distances over a pool, zero diagonal.
struct DistanceMatrix {
  std::string metric;
  std::vector<std::string> labels;
  std::vector<double> values;  // row-major n x n

  std::size_t size() const noexcept { return labels.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values[i * size() + j];
  }
  double& at(std::size_t i, std::size_t j) noexcept { return values[i * size() + j]; }
};

/// Header row of labels, then the full matrix.
inline void write_distance_matrix_csv(const DistanceMatrix& m, std::ostream& out,
                                      const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  for (std::size_t j = 0; j < m.size(); ++j) out << (j ? "," : "") << m.labels[j];
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j)
      out << (j ? "," : "") << detail::format_double(m(i, j));
    out << '\n';
  }
}

struct PairwiseOptions {
  double delta = 0.01;
  std::size_t workers = 1;
  /// Upper bound on bytes of cached CDFs held at once; larger pools
  /// are processed in tiles of graphs.
  std::size_t cache_budget_bytes = std::size_t{1536} << 20;
};

namespace detail {

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "g" + std::to_string(i);
  return labels;
}

template <typename Fn>
auto with_graph_index(std::size_t index, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), "graph " + std::to_string(index) + ": " + e.what());
  }
}

inline void fill_ego_matrix(std::span<const EgonetFeatureTable> features, EgoMetric metric,
                            const PairwiseOptions& opt, DistanceMatrix& out) {
  const std::size_t n = features.size();
  const std::size_t r = bins_for_delta(opt.delta);
  std::size_t max_nodes = 1;
  for (const auto& f : features) max_nodes = std::max(max_nodes, f.size());
  std::size_t per_graph = 0;
  for (AxisSet a : required_axes(metric)) {
    const std::size_t cells = cell_count(r, a.dim());
    per_graph += max_nodes * (4 + 2 * a.dim());
    if (max_nodes * max_nodes > cells) per_graph += cells * 4 + (max_nodes + 1) * 8;
  }
  const std::size_t tile =
      std::clamp<std::size_t>(opt.cache_budget_bytes / std::max<std::size_t>(per_graph, 1) / 2,
                              1, std::max<std::size_t>(n, 1));

  auto build = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::optional<EgoProfile>> profiles(hi - lo);
    parallel_for(hi - lo, opt.workers, [&](std::size_t k) {
      with_graph_index(lo + k, [&] {
        profiles[k].emplace(features[lo + k], opt.delta);
        profiles[k]->prepare(metric);
        return 0;
      });
    });
    return profiles;
  };

  for (std::size_t ti = 0; ti < n; ti += tile) {
    const std::size_t ti_end = std::min(n, ti + tile);
    auto rows = build(ti, ti_end);
    for (std::size_t tj = ti; tj < n; tj += tile) {
      const std::size_t tj_end = std::min(n, tj + tile);
      std::vector<std::optional<EgoProfile>> other;
      if (tj != ti) other = build(tj, tj_end);
      const auto& cols = tj == ti ? rows : other;
      // Pair list for this tile block, evaluated in parallel into fixed slots.
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = ti; i < ti_end; ++i)
        for (std::size_t j = std::max(tj, i + 1); j < tj_end; ++j) pairs.emplace_back(i, j);
      parallel_for(pairs.size(), opt.workers, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const double v = ego_distance(*rows[i - ti], *cols[j - tj], metric);
        out.at(i, j) = v;
        out.at(j, i) = v;
      });
    }
  }
}

}  // namespace detail

/// All-pairs distances from precomputed feature tables (ego metrics only).
inline DistanceMatrix pairwise_distances(std::span<const EgonetFeatureTable> features,
                                         EgoMetric metric, const PairwiseOptions& opt = {},
                                         std::vector<std::string> labels = {}) {
  if (features.empty()) throw Error(ErrorKind::InvalidArgument, "empty pool");
  DistanceMatrix out;
  out.metric = std::string(to_string(metric));
  out.labels = labels.empty() ? detail::default_labels(features.size()) : std::move(labels);
  out.values.assign(features.size() * features.size(), 0.0);
  detail::fill_ego_matrix(features, metric, opt, out);
  return out;
}

/// All-pairs distances over a graph pool. Per-graph summaries (features,
/// CDFs, spectra) are computed once and reused for every pair.
inline DistanceMatrix pairwise_distances(std::span<const WeightedGraph> pool, Metric metric,
                                         const PairwiseOptions& opt = {},
                                         std::vector<std::string> labels = {}) {
  if (pool.empty()) throw Error(ErrorKind::InvalidArgument, "empty pool");
  const std::size_t n = pool.size();
  if (!labels.empty() && labels.size() != n)
    throw Error(ErrorKind::InvalidArgument, "label count does not match pool size");

  if (auto ego = as_ego_metric(metric)) {
    bins_for_delta(opt.delta);
    std::vector<EgonetFeatureTable> features(n);
    parallel_for(n, opt.workers, [&](std::size_t k) {
      features[k] = detail::with_graph_index(k, [&] { return compute_features(pool[k]); });
    });
    return pairwise_distances(features, *ego, opt, std::move(labels));
  }

  DistanceMatrix out;
  out.metric = std::string(to_string(metric));
  out.labels = labels.empty() ? detail::default_labels(n) : std::move(labels);
  out.values.assign(n * n, 0.0);

  if (metric == Metric::Cglobal) {
    std::vector<double> cg(n);
    parallel_for(n, opt.workers, [&](std::size_t k) {
      cg[k] = detail::with_graph_index(k, [&] { return global_clustering(pool[k]); });
    });
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        out.at(i, j) = out.at(j, i) = global_clustering_distance(cg[i], cg[j]);
    return out;
  }

  const auto variant = metric == Metric::SpW ? SpectralVariant::WeightMatrix
                                             : SpectralVariant::Laplacian;
  std::vector<std::vector<double>> spectra(n);
  parallel_for(n, opt.workers, [&](std::size_t k) {
    spectra[k] = detail::with_graph_index(k, [&] { return spectrum(pool[k], variant); });
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.at(i, j) = out.at(j, i) = spectral_distance(spectra[i], spectra[j]);
  return out;
}

/// Single-pair convenience over any metric.
inline double graph_distance(const WeightedGraph& a, const WeightedGraph& b, Metric metric,
                             double delta = 0.01) {
  if (auto ego = as_ego_metric(metric)) return ego_distance(a, b, *ego, delta);
  if (metric == Metric::Cglobal) return global_clustering_distance(a, b);
  return spectral_distance(a, b,
                           metric == Metric::SpW ? SpectralVariant::WeightMatrix
                                                 : SpectralVariant::Laplacian);
}

}  // namespace egodist
