#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "egodist/features.hpp"
#include "egodist/graph.hpp"

namespace egodist {

/// Mean weighted clustering coefficient C = (1/N) sum_i c_i.
inline double global_clustering(const WeightedGraph& g) {
  const auto c = weighted_clustering(g);
  return std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
}

inline double global_clustering_distance(double ca, double cb) { return std::abs(ca - cb); }

inline double global_clustering_distance(const WeightedGraph& a, const WeightedGraph& b) {
  return global_clustering_distance(global_clustering(a), global_clustering(b));
}

enum class SpectralVariant { WeightMatrix, Laplacian };

constexpr std::string_view to_string(SpectralVariant v) noexcept {
  return v == SpectralVariant::WeightMatrix ? "spw" : "spl";
}

/// All eigenvalues of W or L = diag(s) - W, sorted descending.
inline std::vector<double> spectrum(const WeightedGraph& g, SpectralVariant variant) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    auto nb = g.neighbors(i);
    auto wt = g.weights(i);
    for (std::size_t k = 0; k < nb.size(); ++k)
      m(i, nb[k]) = variant == SpectralVariant::Laplacian ? -wt[k] : wt[k];
    if (variant == SpectralVariant::Laplacian) m(i, i) = g.strength(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::EigenSolver,
                "symmetric eigensolver did not converge (n=" + std::to_string(n) + ")");
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

/// Euclidean distance over the leading min(N1, N2) eigenvalues of two
/// descending spectra.
inline double spectral_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t k = std::min(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

inline double spectral_distance(const WeightedGraph& a, const WeightedGraph& b,
                                SpectralVariant variant) {
  const auto sa = spectrum(a, variant);
  const auto sb = spectrum(b, variant);
  return spectral_distance(sa, sb);
}

}  // namespace egodist
