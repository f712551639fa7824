#pragma once

// Brute-force reference implementations used by the unit and acceptance
// tests. They work on a dense weight matrix and share no code with the
// library kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "egodist/generators.hpp"
#include "egodist/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix dense(const egodist::WeightedGraph& g) {
  const std::size_t n = g.node_count();
  Matrix w(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) w[e.u][e.v] = w[e.v][e.u] = e.w;
  return w;
}

inline std::vector<double> strengths(const Matrix& w) {
  std::vector<double> s(w.size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) s[i] += w[i][j];
  return s;
}

inline std::vector<double> normalized_degree(const Matrix& w) {
  const auto s = strengths(w);
  const double lo = *std::min_element(s.begin(), s.end());
  const double hi = *std::max_element(s.begin(), s.end());
  std::vector<double> d(s.size(), 0.0);
  if (hi > lo)
    for (std::size_t i = 0; i < s.size(); ++i) d[i] = (s[i] - lo) / (hi - lo);
  return d;
}

// Triangle enumeration over all node triples.
inline std::vector<double> clustering(const Matrix& w) {
  const std::size_t n = w.size();
  double wmax = 0.0;
  for (const auto& row : w)
    for (double x : row) wmax = std::max(wmax, x);
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t m = 0;
    for (std::size_t j = 0; j < n; ++j) m += w[i][j] > 0.0;
    if (m < 2) continue;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (w[i][j] > 0.0 && w[i][k] > 0.0 && w[j][k] > 0.0)
          sum += std::cbrt(w[i][j] * w[j][k] * w[k][i]) / wmax;
    c[i] = sum * 2.0 / (static_cast<double>(m) * static_cast<double>(m - 1));
  }
  return c;
}

// One-step stay probability of a strength-proportional random walk started
// from the strength-weighted distribution on the egonet.
inline std::vector<double> persistence(const Matrix& w) {
  const std::size_t n = w.size();
  const auto s = strengths(w);
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> in(n, false);
    in[i] = true;
    bool any = false;
    for (std::size_t j = 0; j < n; ++j)
      if (w[i][j] > 0.0) in[j] = any = true;
    if (!any) continue;
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (in[j]) mass += s[j];
    double stay = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!in[j] || s[j] == 0.0) continue;
      const double pi = s[j] / mass;
      double row = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (in[k]) row += w[j][k] / s[j];
      stay += pi * row;
    }
    p[i] = stay;
  }
  return p;
}

// CDF on the full grid straight from the definition, row-major.
inline std::vector<double> cdf_grid(const std::vector<std::vector<std::size_t>>& bins,
                                    std::size_t r) {
  const std::size_t dim = bins.empty() ? 0 : bins.front().size();
  std::size_t cells = 1;
  for (std::size_t k = 0; k < dim; ++k) cells *= r;
  std::vector<double> q(cells, 0.0);
  std::vector<std::size_t> at(dim);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rest = cell;
    for (std::size_t k = dim; k-- > 0;) {
      at[k] = rest % r;
      rest /= r;
    }
    std::size_t below = 0;
    for (const auto& b : bins) {
      bool ok = true;
      for (std::size_t k = 0; k < dim; ++k) ok = ok && b[k] <= at[k];
      below += ok;
    }
    q[cell] = static_cast<double>(below) / static_cast<double>(bins.size());
  }
  return q;
}

enum class WeightKind { Unit, Uniform, Multiscale, SmallIntegers };

// Random graph with n nodes, edge probability p and the chosen weights.
inline egodist::WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, double p,
                                           WeightKind kind) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 3.0);
  std::uniform_int_distribution<int> small(1, 4);
  std::vector<egodist::WeightedEdge> edges;
  for (egodist::NodeId i = 0; i < n; ++i)
    for (egodist::NodeId j = i + 1; j < n; ++j) {
      if (u(rng) >= p) continue;
      double w = 1.0;
      switch (kind) {
        case WeightKind::Unit: break;
        case WeightKind::Uniform: w = 1.0 - u(rng); break;
        case WeightKind::Multiscale: w = std::exp(gauss(rng)); break;
        case WeightKind::SmallIntegers: w = small(rng); break;
      }
      edges.push_back({i, j, w});
    }
  return egodist::build_graph(n, edges);
}

// Mixed bag: plain random graphs with varied weights plus small instances
// of the synthetic models.
inline egodist::WeightedGraph mixed_graph(std::mt19937_64& rng, std::size_t max_n) {
  std::uniform_int_distribution<std::size_t> pick(0, 5);
  std::uniform_int_distribution<std::size_t> size(2, max_n);
  std::uniform_real_distribution<double> dens(0.05, 0.9);
  const auto choice = pick(rng);
  if (choice < 4)
    return random_graph(rng, size(rng), dens(rng), static_cast<WeightKind>(choice));
  using egodist::Model;
  const auto model = egodist::kAllModels[std::uniform_int_distribution<std::size_t>(0, 11)(rng)];
  // rho N / 2 = eta integer for growth models: N = 20, rho in {0.1, 0.2, 0.3}.
  const double rho = 0.1 * static_cast<double>(std::uniform_int_distribution<int>(1, 3)(rng));
  return egodist::generate({model, 20, rho, rng()});
}

}  // namespace oracle
