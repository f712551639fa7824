#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egodist/error.hpp"
#include "egodist/graph.hpp"
#include "egodist/parallel.hpp"
#include "egodist/random.hpp"

namespace egodist {

enum class Model { ER_U, ER_R, ER_D, BA_U, BA_R, BA_D, GEO_U, GEO_R, GEO_D, YJBT, AK_R, AK_E };

inline constexpr std::array<Model, 12> kAllModels = {
    Model::ER_U,  Model::ER_R,  Model::ER_D,  Model::BA_U, Model::BA_R, Model::BA_D,
    Model::GEO_U, Model::GEO_R, Model::GEO_D, Model::YJBT, Model::AK_R, Model::AK_E};

constexpr std::string_view to_string(Model m) noexcept {
  switch (m) {
    case Model::ER_U: return "ER_U";
    case Model::ER_R: return "ER_R";
    case Model::ER_D: return "ER_D";
    case Model::BA_U: return "BA_U";
    case Model::BA_R: return "BA_R";
    case Model::BA_D: return "BA_D";
    case Model::GEO_U: return "GEO_U";
    case Model::GEO_R: return "GEO_R";
    case Model::GEO_D: return "GEO_D";
    case Model::YJBT: return "YJBT";
    case Model::AK_R: return "AK_R";
    case Model::AK_E: return "AK_E";
  }
  return "?";
}

/// Accepts the canonical names and their dashed spelling (ER-U).
inline Model parse_model(std::string_view name) {
  std::string norm(name);
  std::replace(norm.begin(), norm.end(), '-', '_');
  for (auto& ch : norm) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (Model m : kAllModels)
    if (to_string(m) == norm) return m;
  throw Error(ErrorKind::UnknownModel, "'" + std::string(name) + "'");
}

enum class Topology { ErdosRenyi, PreferentialAttachment, Geometric, StrengthAttachment };

constexpr Topology topology_of(Model m) noexcept {
  switch (m) {
    case Model::ER_U:
    case Model::ER_R:
    case Model::ER_D: return Topology::ErdosRenyi;
    case Model::GEO_U:
    case Model::GEO_R:
    case Model::GEO_D: return Topology::Geometric;
    case Model::AK_R:
    case Model::AK_E: return Topology::StrengthAttachment;
    default: return Topology::PreferentialAttachment;
  }
}

/// ER-x and GEO-x have Poisson-like degrees; the growth models are scale-free.
constexpr bool is_degree_homogeneous(Model m) noexcept {
  const auto t = topology_of(m);
  return t == Topology::ErdosRenyi || t == Topology::Geometric;
}

constexpr bool is_growth_model(Model m) noexcept { return !is_degree_homogeneous(m); }

struct ModelSpec {
  Model model = Model::ER_U;
  std::size_t n = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
};

/// eta = rho N / 2, the number of edges each new node brings in growth models.
inline std::size_t growth_eta(std::size_t n, double rho) {
  const double eta = rho * static_cast<double>(n) / 2.0;
  const double rounded = std::round(eta);
  if (std::abs(eta - rounded) > 1e-9 * std::max(1.0, eta) || rounded < 1.0)
    throw Error(ErrorKind::NonIntegerEta, "rho*N/2 = " + std::to_string(eta) +
                                              " must be a positive integer (N=" +
                                              std::to_string(n) + ", rho=" + std::to_string(rho) + ")");
  const auto e = static_cast<std::size_t>(rounded);
  if (e + 1 > n)
    throw Error(ErrorKind::InvalidArgument, "seed clique of eta+1=" + std::to_string(e + 1) +
                                                " nodes exceeds N=" + std::to_string(n));
  return e;
}

inline void validate(const ModelSpec& spec) {
  if (spec.n < 2) throw Error(ErrorKind::InvalidArgument, "model size N must be at least 2");
  if (!(spec.rho > 0.0 && spec.rho < 1.0))
    throw Error(ErrorKind::InvalidArgument, "density must lie in (0, 1)");
  if (is_growth_model(spec.model)) growth_eta(spec.n, spec.rho);
}

namespace detail {

enum class Weighting { Uniform, Random, DegreeProduct };

inline Weighting weighting_of(Model m) {
  switch (m) {
    case Model::ER_U:
    case Model::BA_U:
    case Model::GEO_U: return Weighting::Uniform;
    case Model::ER_R:
    case Model::BA_R:
    case Model::GEO_R: return Weighting::Random;
    default: return Weighting::DegreeProduct;
  }
}

/// U[0,1) draw, redrawn on exact 0.
inline double positive_uniform(Philox& rng) {
  double w;
  do w = rng.uniform();
  while (w == 0.0);
  return w;
}

struct Pair {
  NodeId u, v;
};

inline std::vector<WeightedEdge> apply_weighting(std::size_t n, std::vector<Pair> pairs,
                                                 Weighting scheme, Philox& weight_rng) {
  for (auto& p : pairs)
    if (p.u > p.v) std::swap(p.u, p.v);
  std::sort(pairs.begin(), pairs.end(),
            [](Pair a, Pair b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  std::vector<std::size_t> degree(n, 0);
  for (auto p : pairs) {
    ++degree[p.u];
    ++degree[p.v];
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(pairs.size());
  for (auto p : pairs) {
    double w = 1.0;
    if (scheme == Weighting::Random) w = positive_uniform(weight_rng);
    if (scheme == Weighting::DegreeProduct)
      w = static_cast<double>(degree[p.u]) * static_cast<double>(degree[p.v]);
    edges.push_back({p.u, p.v, w});
  }
  return edges;
}

inline std::vector<Pair> erdos_renyi_pairs(std::size_t n, double rho, Philox& rng) {
  std::vector<Pair> pairs;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.uniform() < rho) pairs.push_back({i, j});
  return pairs;
}

/// Preferential attachment by degree; if `yjbt_weights` is set, also fills
/// the YJBT weight of every edge (pairs and weights share indices).
inline std::vector<Pair> barabasi_albert_pairs(std::size_t n, std::size_t eta, Philox& rng,
                                               std::vector<double>* yjbt_weights) {
  std::vector<Pair> pairs;
  std::vector<NodeId> ends;  // each edge endpoint once: uniform pick == degree-proportional
  std::vector<std::size_t> degree(n, 0);
  for (NodeId i = 0; i <= eta; ++i)
    for (NodeId j = i + 1; j <= eta; ++j) {
      pairs.push_back({i, j});
      ends.push_back(i);
      ends.push_back(j);
      ++degree[i];
      ++degree[j];
      // Seed nodes are treated as born with eta clique edges of total weight 1.
      if (yjbt_weights) yjbt_weights->push_back(1.0 / static_cast<double>(eta));
    }
  std::vector<NodeId> chosen;
  for (auto v = static_cast<NodeId>(eta + 1); v < n; ++v) {
    chosen.clear();
    while (chosen.size() < eta) {
      const NodeId t = ends[rng.below(ends.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    double degree_sum = 0.0;
    for (NodeId t : chosen) degree_sum += static_cast<double>(degree[t]);
    for (NodeId t : chosen) {
      pairs.push_back({v, t});
      if (yjbt_weights) yjbt_weights->push_back(static_cast<double>(degree[t]) / degree_sum);
    }
    for (NodeId t : chosen) {
      ends.push_back(v);
      ends.push_back(t);
      ++degree[v];
      ++degree[t];
    }
  }
  return pairs;
}

/// Fenwick tree over non-negative node masses with prefix search.
class MassTree {
 public:
  explicit MassTree(std::size_t n) : tree_(n + 1, 0.0), mass_(n, 0.0) {}

  void add(std::size_t i, double delta) {
    mass_[i] += delta;
    total_ += delta;
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  double total() const noexcept { return total_; }

  /// Smallest index whose cumulative mass exceeds x, restricted to nodes
  /// with positive mass.
  std::size_t find(double x) const {
    std::size_t pos = 0;
    std::size_t step = std::bit_floor(tree_.size() - 1);
    for (; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= x) {
        pos = next;
        x -= tree_[next];
      }
    }
    // Guard against round-off pushing past the last massive node.
    std::size_t i = std::min(pos, mass_.size() - 1);
    while (i > 0 && mass_[i] <= 0.0) --i;
    return i;
  }

 private:
  std::vector<double> tree_;
  std::vector<double> mass_;
  double total_ = 0.0;
};

/// Antal-Krapivsky growth: targets drawn proportionally to current strength,
/// each new edge weighted on insertion so weights steer later attachment.
inline std::vector<WeightedEdge> antal_krapivsky(std::size_t n, std::size_t eta, bool exponential,
                                                 Philox& topo, Philox& weight_rng) {
  auto draw = [&] {
    return exponential ? weight_rng.exponential() : positive_uniform(weight_rng);
  };
  std::vector<WeightedEdge> edges;
  MassTree strength(n);
  for (NodeId i = 0; i <= eta; ++i)
    for (NodeId j = i + 1; j <= eta; ++j) {
      const double w = draw();
      edges.push_back({i, j, w});
      strength.add(i, w);
      strength.add(j, w);
    }
  std::vector<NodeId> chosen;
  for (auto v = static_cast<NodeId>(eta + 1); v < n; ++v) {
    chosen.clear();
    while (chosen.size() < eta) {
      const auto t = static_cast<NodeId>(strength.find(topo.uniform() * strength.total()));
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    for (NodeId t : chosen) {
      const double w = draw();
      edges.push_back({t, v, w});
      strength.add(t, w);
      strength.add(v, w);
    }
  }
  return edges;
}

struct Point3 {
  double x, y, z;
};

inline std::vector<Point3> random_points(std::size_t n, Philox& rng) {
  std::vector<Point3> pts(n);
  for (auto& p : pts) {
    p.x = rng.uniform();
    p.y = rng.uniform();
    p.z = rng.uniform();
  }
  return pts;
}

/// Calls visit(i, j) for every pair i < j closer than `radius`, using a
/// uniform cell grid with cell side >= radius.
template <typename Visit>
void for_each_close_pair(const std::vector<Point3>& pts, double radius, Visit&& visit) {
  const std::size_t n = pts.size();
  const auto cells = static_cast<std::size_t>(
      std::clamp(std::floor(1.0 / radius), 1.0, std::max(1.0, std::cbrt(static_cast<double>(n)))));
  auto cell_of = [&](double c) {
    return std::min(cells - 1, static_cast<std::size_t>(c * static_cast<double>(cells)));
  };
  std::vector<std::vector<NodeId>> grid(cells * cells * cells);
  for (NodeId i = 0; i < n; ++i)
    grid[(cell_of(pts[i].x) * cells + cell_of(pts[i].y)) * cells + cell_of(pts[i].z)].push_back(i);
  const double r2 = radius * radius;
  auto close = [&](NodeId i, NodeId j) {
    const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y, dz = pts[i].z - pts[j].z;
    return dx * dx + dy * dy + dz * dz < r2;
  };
  const auto c = static_cast<long>(cells);
  for (long a = 0; a < c; ++a)
    for (long b = 0; b < c; ++b)
      for (long d = 0; d < c; ++d) {
        const auto& here = grid[(a * c + b) * c + d];
        for (long da = -1; da <= 1; ++da)
          for (long db = -1; db <= 1; ++db)
            for (long dd = -1; dd <= 1; ++dd) {
              const long na = a + da, nb = b + db, nd = d + dd;
              if (na < 0 || nb < 0 || nd < 0 || na >= c || nb >= c || nd >= c) continue;
              const auto& there = grid[(na * c + nb) * c + nd];
              for (NodeId i : here)
                for (NodeId j : there)
                  if (i < j && close(i, j)) visit(i, j);
            }
      }
}

inline std::size_t count_close_pairs(const std::vector<Point3>& pts, double radius) {
  std::size_t count = 0;
  for_each_close_pair(pts, radius, [&](NodeId, NodeId) { ++count; });
  return count;
}

}  // namespace detail

/// Radius at which a random geometric graph of n points in the unit cube
/// reaches density rho on average over 10 calibration clouds. Bisection on
/// (0, sqrt 3) until the mean density is within 2% of rho (at most 40
/// steps). Calibration clouds depend only on (n, rho), so every replica of
/// a size/density cell shares one radius. Results are memoized.
inline double calibrate_geo_radius(std::size_t n, double rho) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::uint64_t>, double> memo;
  const auto key = std::make_pair(n, std::bit_cast<std::uint64_t>(rho));
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  constexpr int kClouds = 10;
  constexpr int kMaxIterations = 40;
  Philox calib(hash_combine(0x47454F43414C4942ull, hash_combine(n, key.second)));
  std::vector<std::vector<detail::Point3>> clouds;
  for (int k = 0; k < kClouds; ++k) {
    auto stream = calib.split(static_cast<std::uint64_t>(k));
    clouds.push_back(detail::random_points(n, stream));
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  double lo = 0.0, hi = std::sqrt(3.0);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    double mean = 0.0;
    for (const auto& cloud : clouds)
      mean += static_cast<double>(detail::count_close_pairs(cloud, mid)) / pairs;
    mean /= kClouds;
    if (std::abs(mean - rho) < 0.02 * rho) {
      std::lock_guard lock(mutex);
      memo.emplace(key, mid);
      return mid;
    }
    (mean < rho ? lo : hi) = mid;
  }
  throw Error(ErrorKind::RadiusCalibration,
              "no radius within 2% of rho=" + std::to_string(rho) + " for N=" + std::to_string(n));
}

/// Generates one synthetic weighted network. Topology and weights come from
/// two independent streams split off the spec seed, so models that share a
/// topology family (ER-x; GEO-x; BA-x with YJBT) produce identical edge sets
/// for a given seed.
inline WeightedGraph generate(const ModelSpec& spec) {
  validate(spec);
  const Philox base(spec.seed);
  Philox topo = base.split(0);
  Philox weights = base.split(1);
  const auto scheme = detail::weighting_of(spec.model);

  switch (topology_of(spec.model)) {
    case Topology::ErdosRenyi: {
      auto pairs = detail::erdos_renyi_pairs(spec.n, spec.rho, topo);
      return build_graph(spec.n, detail::apply_weighting(spec.n, std::move(pairs), scheme, weights));
    }
    case Topology::Geometric: {
      const double radius = calibrate_geo_radius(spec.n, spec.rho);
      const auto pts = detail::random_points(spec.n, topo);
      std::vector<detail::Pair> pairs;
      detail::for_each_close_pair(pts, radius, [&](NodeId i, NodeId j) { pairs.push_back({i, j}); });
      return build_graph(spec.n, detail::apply_weighting(spec.n, std::move(pairs), scheme, weights));
    }
    case Topology::PreferentialAttachment: {
      const std::size_t eta = growth_eta(spec.n, spec.rho);
      if (spec.model == Model::YJBT) {
        std::vector<double> w;
        const auto pairs = detail::barabasi_albert_pairs(spec.n, eta, topo, &w);
        std::vector<WeightedEdge> edges;
        edges.reserve(pairs.size());
        for (std::size_t k = 0; k < pairs.size(); ++k)
          edges.push_back({pairs[k].u, pairs[k].v, w[k]});
        return build_graph(spec.n, edges);
      }
      auto pairs = detail::barabasi_albert_pairs(spec.n, eta, topo, nullptr);
      return build_graph(spec.n, detail::apply_weighting(spec.n, std::move(pairs), scheme, weights));
    }
    case Topology::StrengthAttachment: {
      const std::size_t eta = growth_eta(spec.n, spec.rho);
      return build_graph(spec.n, detail::antal_krapivsky(spec.n, eta, spec.model == Model::AK_E,
                                                         topo, weights));
    }
  }
  throw Error(ErrorKind::UnknownModel, std::string(to_string(spec.model)));
}

/// rho rendered with %g, as used in file names.
inline std::string format_rho(double rho) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", rho);
  return buf;
}

struct PoolEntry {
  ModelSpec spec;
  std::size_t replica = 0;
  WeightedGraph graph;

  /// <model>_N<n>_rho<rho>_rep<k>
  std::string stem() const {
    return std::string(to_string(spec.model)) + "_N" + std::to_string(spec.n) + "_rho" +
           format_rho(spec.rho) + "_rep" + std::to_string(replica);
  }
};

struct PoolConfig {
  std::vector<Model> models{kAllModels.begin(), kAllModels.end()};
  std::vector<std::size_t> sizes{1000, 2000, 4000};
  std::vector<double> densities{0.004, 0.01, 0.02};
  std::size_t replicas = 10;
  std::uint64_t base_seed = 1;
};

/// Spec list in pool order (model, size, density, replica) with per-spec
/// seeds hash(base_seed, index). Validates every spec up front.
inline std::vector<std::pair<ModelSpec, std::size_t>> pool_specs(const PoolConfig& cfg) {
  if (cfg.replicas == 0) throw Error(ErrorKind::InvalidArgument, "replicas must be positive");
  std::vector<std::pair<ModelSpec, std::size_t>> specs;
  std::uint64_t index = 0;
  for (Model m : cfg.models)
    for (std::size_t n : cfg.sizes)
      for (double rho : cfg.densities)
        for (std::size_t rep = 0; rep < cfg.replicas; ++rep) {
          ModelSpec s{m, n, rho, hash_combine(cfg.base_seed, index++)};
          validate(s);
          specs.emplace_back(s, rep);
        }
  return specs;
}

inline std::vector<PoolEntry> generate_pool(const PoolConfig& cfg, std::size_t workers = 1) {
  const auto specs = pool_specs(cfg);
  std::vector<PoolEntry> pool(specs.size());
  parallel_for(specs.size(), workers, [&](std::size_t k) {
    pool[k].spec = specs[k].first;
    pool[k].replica = specs[k].second;
    pool[k].graph = generate(specs[k].first);
  });
  return pool;
}

}  // namespace egodist
