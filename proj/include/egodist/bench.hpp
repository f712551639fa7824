#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egodist/distance_matrix.hpp"
#include "egodist/generators.hpp"

namespace egodist {

/// PerPair times every distance from the two graphs alone (features, CDFs
/// and distance recomputed for each pair); Pool times the cached all-pairs
/// driver, where per-graph work is done once.
enum class BenchMode { PerPair, Pool };

inline BenchMode parse_bench_mode(std::string_view s) {
  if (s == "pair") return BenchMode::PerPair;
  if (s == "pool") return BenchMode::Pool;
  throw Error(ErrorKind::InvalidArgument, "bench mode must be pair or pool");
}

constexpr std::string_view to_string(BenchMode m) noexcept {
  return m == BenchMode::PerPair ? "pair" : "pool";
}

struct BenchConfig {
  std::vector<std::size_t> sizes = {250, 500, 1000};
  std::vector<double> densities = {0.008, 0.016};
  std::vector<Model> models{kAllModels.begin(), kAllModels.end()};
  std::size_t replicas = 3;
  Metric metric = Metric::Ddcp;
  BenchMode mode = BenchMode::PerPair;
  double delta = 0.01;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

struct BenchRow {
  std::size_t n;
  double rho;
  std::size_t graphs;
  std::size_t pairs;
  double seconds;        // wall time of the all-pairs pass
  double mean_distance;  // checksum, independent of timing and workers
};

struct ExponentFit {
  double alpha;
  double log_prefactor;
  std::size_t points;
};

/// Least-squares fit of log t = log a + alpha log N.
inline ExponentFit fit_exponent(std::span<const double> n, std::span<const double> t) {
  if (n.size() != t.size()) throw Error(ErrorKind::InvalidArgument, "size/time length mismatch");
  std::set<double> distinct(n.begin(), n.end());
  if (distinct.size() < 2)
    throw Error(ErrorKind::FitUnderdetermined, "exponent fit needs at least 2 distinct sizes");
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    if (!(n[k] > 0.0) || !(t[k] > 0.0))
      throw Error(ErrorKind::InvalidArgument, "sizes and times must be positive");
    sx += std::log(n[k]);
    sy += std::log(t[k]);
  }
  const double m = static_cast<double>(n.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    const double x = std::log(n[k]) - mx, y = std::log(t[k]) - my;
    sxx += x * x;
    sxy += x * y;
  }
  const double alpha = sxy / sxx;
  return {alpha, my - alpha * mx, n.size()};
}

inline ExponentFit fit_exponent(std::span<const BenchRow> rows) {
  std::vector<double> n, t;
  for (const auto& r : rows) {
    n.push_back(static_cast<double>(r.n));
    t.push_back(r.seconds);
  }
  return fit_exponent(n, t);
}

/// Times all-pairs distances over a models x replicas pool for every
/// (n, rho). Graph generation is excluded from the timing.
template <typename Progress>
std::vector<BenchRow> run_bench(const BenchConfig& cfg, Progress&& progress) {
  if (cfg.sizes.size() < 2 ||
      std::set<std::size_t>(cfg.sizes.begin(), cfg.sizes.end()).size() < 2)
    throw Error(ErrorKind::FitUnderdetermined, "exponent fit needs at least 2 distinct sizes");
  if (cfg.replicas == 0 || cfg.models.empty())
    throw Error(ErrorKind::InvalidArgument, "bench pool is empty");
  std::vector<BenchRow> rows;
  for (double rho : cfg.densities)
    for (std::size_t n : cfg.sizes) {
      PoolConfig pc;
      pc.models = cfg.models;
      pc.sizes = {n};
      pc.densities = {rho};
      pc.replicas = cfg.replicas;
      pc.base_seed = cfg.seed;
      const auto pool = generate_pool(pc, cfg.workers);
      std::vector<WeightedGraph> graphs;
      graphs.reserve(pool.size());
      for (const auto& e : pool) graphs.push_back(e.graph);

      const std::size_t g = graphs.size();
      std::vector<double> values;
      const auto start = std::chrono::steady_clock::now();
      if (cfg.mode == BenchMode::Pool) {
        PairwiseOptions opt;
        opt.delta = cfg.delta;
        opt.workers = cfg.workers;
        const auto dm = pairwise_distances(std::span<const WeightedGraph>(graphs), cfg.metric, opt);
        for (std::size_t i = 0; i < g; ++i)
          for (std::size_t j = i + 1; j < g; ++j) values.push_back(dm(i, j));
      } else {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < g; ++i)
          for (std::size_t j = i + 1; j < g; ++j) pairs.emplace_back(i, j);
        values.resize(pairs.size());
        parallel_for(pairs.size(), cfg.workers, [&](std::size_t k) {
          values[k] = graph_distance(graphs[pairs[k].first], graphs[pairs[k].second], cfg.metric,
                                     cfg.delta);
        });
      }
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      double sum = 0.0;
      for (double v : values) sum += v;
      const std::size_t pairs = g * (g - 1) / 2;
      rows.push_back({n, rho, g, pairs, elapsed.count(),
                      pairs ? sum / static_cast<double>(pairs) : 0.0});
      progress(rows.back());
    }
  return rows;
}

inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  return run_bench(cfg, [](const BenchRow&) {});
}

inline void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out,
                            const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "n,rho,graphs,pairs,seconds,mean_distance\n";
  for (const auto& r : rows)
    out << r.n << ',' << format_rho(r.rho) << ',' << r.graphs << ',' << r.pairs << ','
        << detail::format_double(r.seconds) << ',' << detail::format_double(r.mean_distance)
        << '\n';
}

}  // namespace egodist
