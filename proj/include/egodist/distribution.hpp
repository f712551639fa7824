#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "egodist/error.hpp"
#include "egodist/features.hpp"

namespace egodist {

enum class Axis : std::uint8_t { D = 0, C = 1, P = 2 };

/// Ordered, non-empty subset of {d, c, p}; always kept in canonical d, c, p order.
class AxisSet {
 public:
  AxisSet() = default;
  AxisSet(std::initializer_list<Axis> axes) {
    for (Axis a : axes) mask_ |= bit(a);
  }

  static AxisSet from_mask(unsigned mask) {
    AxisSet s;
    s.mask_ = mask & 7u;
    return s;
  }

  bool contains(Axis a) const noexcept { return (mask_ & bit(a)) != 0; }
  unsigned mask() const noexcept { return mask_; }
  bool empty() const noexcept { return mask_ == 0; }

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(__builtin_popcount(mask_));
  }

  std::vector<Axis> axes() const {
    std::vector<Axis> out;
    for (Axis a : {Axis::D, Axis::C, Axis::P})
      if (contains(a)) out.push_back(a);
    return out;
  }

  std::string name() const {
    std::string s;
    if (contains(Axis::D)) s += 'd';
    if (contains(Axis::C)) s += 'c';
    if (contains(Axis::P)) s += 'p';
    return s;
  }

  friend bool operator==(AxisSet, AxisSet) = default;

 private:
  static constexpr unsigned bit(Axis a) { return 1u << static_cast<unsigned>(a); }
  unsigned mask_ = 0;
};

/// Number of bins per axis for a bin width delta; rejects widths whose
/// reciprocal is not an integer, and r < 2 (the distance normalizer
/// sqrt(r - 1) would vanish).
inline std::size_t bins_for_delta(double delta) {
  if (!(delta > 0.0) || !(delta <= 1.0))
    throw Error(ErrorKind::InvalidDelta, "delta must lie in (0, 1], got " + std::to_string(delta));
  const double inv = 1.0 / delta;
  const double r = std::round(inv);
  if (std::abs(inv - r) > 1e-9 * r)
    throw Error(ErrorKind::InvalidDelta,
                "1/delta must be an integer, got 1/" + std::to_string(delta) + " = " +
                    std::to_string(inv));
  if (r < 2.0) throw Error(ErrorKind::InvalidDelta, "delta must be at most 1/2");
  if (r > 65535.0) throw Error(ErrorKind::InvalidDelta, "delta must be at least 1/65535");
  return static_cast<std::size_t>(r);
}

/// Bin of a feature value in [0, 1]: cell h covers [h/r, (h+1)/r), value 1
/// goes to the last cell. A 1e-9 nudge in bin units snaps values that sit on
/// a decimal grid edge (i/r rounded to double) onto the bin they label.
inline std::size_t bin_of(double x, std::size_t r) noexcept {
  const double scaled = std::floor(x * static_cast<double>(r) + 1e-9);
  if (!(scaled > 0.0)) return 0;
  const auto h = static_cast<std::size_t>(scaled);
  return h >= r ? r - 1 : h;
}

namespace detail {

inline std::size_t cell_count(std::size_t r, std::size_t dim) {
  std::size_t cells = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (cells > (std::size_t{1} << 31) / r)
      throw Error(ErrorKind::InvalidArgument, "distribution grid too large");
    cells *= r;
  }
  return cells;
}

inline std::span<const double> feature_column(const EgonetFeatureTable& t, Axis a) {
  switch (a) {
    case Axis::D: return t.d;
    case Axis::C: return t.c;
    case Axis::P: return t.p;
  }
  return t.d;
}

}  // namespace detail

/// Discretized joint PDF, stored as integer counts over a dense r^dim grid
/// (row-major, first axis in canonical order varies slowest). pdf(cell) is
/// count / N.
struct FeatureHistogram {
  AxisSet axes;
  std::size_t r = 0;
  std::size_t nodes = 0;
  std::vector<std::uint32_t> counts;

  double delta() const noexcept { return 1.0 / static_cast<double>(r); }
  double pdf(std::size_t cell) const noexcept {
    return static_cast<double>(counts[cell]) / static_cast<double>(nodes);
  }
};

inline FeatureHistogram make_histogram(const EgonetFeatureTable& f, AxisSet axes, double delta) {
  if (axes.empty()) throw Error(ErrorKind::InvalidArgument, "empty axis set");
  if (f.size() == 0) throw Error(ErrorKind::EmptyGraph, "feature table has no nodes");
  FeatureHistogram h;
  h.axes = axes;
  h.r = bins_for_delta(delta);
  h.nodes = f.size();
  h.counts.assign(detail::cell_count(h.r, axes.dim()), 0);
  const auto order = axes.axes();
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t cell = 0;
    for (Axis a : order) cell = cell * h.r + bin_of(detail::feature_column(f, a)[i], h.r);
    ++h.counts[cell];
  }
  return h;
}

/// Sums a histogram over the axes not in `keep`.
inline FeatureHistogram marginalize(const FeatureHistogram& h, AxisSet keep) {
  for (Axis a : keep.axes())
    if (!h.axes.contains(a))
      throw Error(ErrorKind::InvalidArgument, "cannot keep axis absent from histogram");
  if (keep.empty()) throw Error(ErrorKind::InvalidArgument, "empty axis set");
  FeatureHistogram out;
  out.axes = keep;
  out.r = h.r;
  out.nodes = h.nodes;
  out.counts.assign(detail::cell_count(h.r, keep.dim()), 0);
  const auto src_axes = h.axes.axes();
  const std::size_t dim = src_axes.size();
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t cell = 0; cell < h.counts.size(); ++cell) {
    std::size_t rest = cell;
    for (std::size_t k = dim; k-- > 0;) {
      idx[k] = rest % h.r;
      rest /= h.r;
    }
    std::size_t target = 0;
    for (std::size_t k = 0; k < dim; ++k)
      if (keep.contains(src_axes[k])) target = target * h.r + idx[k];
    out.counts[target] += h.counts[cell];
  }
  return out;
}

/// Discretized joint CDF Q over an r^dim grid.
///
/// Two exact representations are kept. The occupied cells (bin coordinates
/// plus node counts) are always stored; the squared CDF difference summed
/// over the grid equals a double sum over occupied-cell pairs of the count
/// of grid cells dominating both, prod_k (r - max(a_k, b_k)), so distances
/// can be evaluated in integer arithmetic in O(U_a * U_b). When a graph
/// occupies more than sqrt(r^dim) cells the dense cumulative-count grid is
/// built as well and used whenever it is the cheaper path.
class FeatureDistribution {
 public:
  using Wide = unsigned __int128;

  enum class Storage { Auto, Dense, Sparse };

  FeatureDistribution() = default;

  explicit FeatureDistribution(const FeatureHistogram& h, Storage storage = Storage::Auto)
      : axes_(h.axes), r_(h.r), nodes_(h.nodes), cells_(h.counts.size()) {
    for (std::size_t cell = 0; cell < h.counts.size(); ++cell)
      if (h.counts[cell] != 0) add_cell(cell, h.counts[cell]);
    finish(storage);
  }

  /// Builds directly from per-node features without a dense histogram.
  FeatureDistribution(const EgonetFeatureTable& f, AxisSet axes, double delta,
                      Storage storage = Storage::Auto)
      : axes_(axes), r_(bins_for_delta(delta)), nodes_(f.size()) {
    if (axes.empty()) throw Error(ErrorKind::InvalidArgument, "empty axis set");
    if (f.size() == 0) throw Error(ErrorKind::EmptyGraph, "feature table has no nodes");
    cells_ = detail::cell_count(r_, axes.dim());
    const auto order = axes.axes();
    std::vector<std::uint32_t> cell_of(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::size_t cell = 0;
      for (Axis a : order) cell = cell * r_ + bin_of(detail::feature_column(f, a)[i], r_);
      cell_of[i] = static_cast<std::uint32_t>(cell);
    }
    std::sort(cell_of.begin(), cell_of.end());
    for (std::size_t i = 0; i < cell_of.size();) {
      std::size_t j = i;
      while (j < cell_of.size() && cell_of[j] == cell_of[i]) ++j;
      add_cell(cell_of[i], static_cast<std::uint32_t>(j - i));
      i = j;
    }
    finish(storage);
  }

  AxisSet axes() const noexcept { return axes_; }
  std::size_t dim() const noexcept { return axes_.dim(); }
  std::size_t bins() const noexcept { return r_; }
  double delta() const noexcept { return 1.0 / static_cast<double>(r_); }
  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t cells() const noexcept { return cells_; }
  std::size_t occupied_cells() const noexcept { return mult_.size(); }
  bool has_dense() const noexcept { return !cumulative_.empty(); }

  /// Q at a grid cell (row-major index).
  double cdf(std::size_t cell) const {
    if (has_dense()) return lut_[cumulative_[cell]];
    std::array<std::size_t, 3> at{};
    std::size_t rest = cell;
    for (std::size_t k = dim(); k-- > 0;) {
      at[k] = rest % r_;
      rest /= r_;
    }
    std::size_t below = 0;
    for (std::size_t u = 0; u < mult_.size(); ++u) {
      bool inside = true;
      for (std::size_t k = 0; k < dim(); ++k) inside = inside && coords_[k][u] <= at[k];
      if (inside) below += mult_[u];
    }
    return static_cast<double>(below) / static_cast<double>(nodes_);
  }

  std::span<const std::uint32_t> cumulative_counts() const noexcept { return cumulative_; }

  /// Approximate heap footprint.
  std::size_t bytes() const noexcept {
    return mult_.size() * (4 + 2 * dim()) + cumulative_.size() * 4 + lut_.size() * 8;
  }

  /// Normalized Euclidean (Frobenius for dim >= 2) distance between two
  /// CDFs on the same grid: sqrt(sum (Q' - Q'')^2 / (r^dim - 1)).
  friend double cdf_distance(const FeatureDistribution& a, const FeatureDistribution& b) {
    if (a.r_ != b.r_)
      throw Error(ErrorKind::DeltaMismatch,
                  "bins " + std::to_string(a.r_) + " vs " + std::to_string(b.r_));
    if (a.axes_ != b.axes_)
      throw Error(ErrorKind::InvalidArgument,
                  "axis mismatch: " + a.axes_.name() + " vs " + b.axes_.name());
    const double pairs = static_cast<double>(a.mult_.size()) * static_cast<double>(b.mult_.size());
    if (a.has_dense() && b.has_dense() && pairs > static_cast<double>(a.cells_))
      return dense_distance(a, b);
    return sparse_distance(a, b);
  }

 private:
  void add_cell(std::size_t cell, std::uint32_t count) {
    for (std::size_t k = dim(); k-- > 0;) {
      coords_[k].push_back(static_cast<std::uint16_t>(cell % r_));
      cell /= r_;
    }
    mult_.push_back(count);
  }

  void finish(Storage storage) {
    self_ = cross_kernel(*this, *this);
    const std::size_t occupied = mult_.size();
    const bool dense = storage == Storage::Dense ||
                       (storage == Storage::Auto && occupied * occupied > cells_);
    if (dense) build_dense();
  }

  void build_dense() {
    cumulative_.assign(cells_, 0);
    for (std::size_t u = 0; u < mult_.size(); ++u) {
      std::size_t cell = 0;
      for (std::size_t k = 0; k < dim(); ++k) cell = cell * r_ + coords_[k][u];
      cumulative_[cell] = mult_[u];
    }
    // One prefix-sum pass per axis.
    std::size_t stride = 1;
    for (std::size_t k = 0; k < dim(); ++k) {
      const std::size_t block = stride * r_;
      for (std::size_t base = 0; base < cumulative_.size(); base += block)
        for (std::size_t off = 0; off < stride; ++off)
          for (std::size_t t = 1; t < r_; ++t)
            cumulative_[base + t * stride + off] += cumulative_[base + (t - 1) * stride + off];
      stride = block;
    }
    lut_.resize(nodes_ + 1);
    for (std::size_t c = 0; c <= nodes_; ++c)
      lut_[c] = static_cast<double>(c) / static_cast<double>(nodes_);
  }

  // sum_{x in a, y in b} m_x m_y prod_k (r - max(x_k, y_k))
  template <std::size_t Dim>
  static Wide cross_kernel_dim(const FeatureDistribution& a, const FeatureDistribution& b) {
    const auto r = static_cast<std::uint32_t>(a.r_);
    const std::size_t na = a.mult_.size(), nb = b.mult_.size();
    Wide total = 0;
    for (std::size_t x = 0; x < na; ++x) {
      std::uint32_t ax[Dim];
      for (std::size_t k = 0; k < Dim; ++k) ax[k] = a.coords_[k][x];
      std::uint64_t row = 0;
      for (std::size_t y = 0; y < nb; ++y) {
        std::uint64_t term = b.mult_[y];
        for (std::size_t k = 0; k < Dim; ++k) {
          const std::uint32_t by = b.coords_[k][y];
          term *= r - (ax[k] > by ? ax[k] : by);
        }
        row += term;
      }
      total += static_cast<Wide>(row) * a.mult_[x];
    }
    return total;
  }

  static Wide cross_kernel(const FeatureDistribution& a, const FeatureDistribution& b) {
    switch (a.dim()) {
      case 1: return cross_kernel_dim<1>(a, b);
      case 2: return cross_kernel_dim<2>(a, b);
      default: return cross_kernel_dim<3>(a, b);
    }
  }

  static double sparse_distance(const FeatureDistribution& a, const FeatureDistribution& b) {
    const Wide na = a.nodes_, nb = b.nodes_;
    const Wide cross = cross_kernel(a, b);
    // N_a^2 N_b^2 sum (Q_a - Q_b)^2, exact.
    const Wide pos = nb * nb * a.self_ + na * na * b.self_;
    const Wide neg = 2 * na * nb * cross;
    const Wide num = pos > neg ? pos - neg : 0;
    const double scale = static_cast<double>(na * na) * static_cast<double>(nb * nb) *
                         static_cast<double>(a.cells_ - 1);
    return std::sqrt(static_cast<double>(num) / scale);
  }

  static double dense_distance(const FeatureDistribution& a, const FeatureDistribution& b) {
    const std::uint32_t* ca = a.cumulative_.data();
    const std::uint32_t* cb = b.cumulative_.data();
    const double* la = a.lut_.data();
    const double* lb = b.lut_.data();
    double sum = 0.0;
    for (std::size_t k = 0; k < a.cells_; ++k) {
      const double diff = la[ca[k]] - lb[cb[k]];
      sum += diff * diff;
    }
    return std::sqrt(sum / static_cast<double>(a.cells_ - 1));
  }

  AxisSet axes_;
  std::size_t r_ = 0;
  std::size_t nodes_ = 0;
  std::size_t cells_ = 0;
  std::array<std::vector<std::uint16_t>, 3> coords_;
  std::vector<std::uint32_t> mult_;
  Wide self_ = 0;
  std::vector<std::uint32_t> cumulative_;
  std::vector<double> lut_;
};

inline FeatureDistribution make_distribution(
    const EgonetFeatureTable& f, AxisSet axes, double delta,
    FeatureDistribution::Storage storage = FeatureDistribution::Storage::Auto) {
  return FeatureDistribution(f, axes, delta, storage);
}

}  // namespace egodist
