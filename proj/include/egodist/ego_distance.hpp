#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "egodist/distribution.hpp"
#include "egodist/features.hpp"
#include "egodist/graph.hpp"

namespace egodist {

enum class EgoMetric { Dd, Dc, Dp, Dsum, Dcp, Ddc, Ddp, Ddcp };

inline constexpr std::array<EgoMetric, 8> kAllEgoMetrics = {
    EgoMetric::Dd,  EgoMetric::Dc,  EgoMetric::Dp,  EgoMetric::Dsum,
    EgoMetric::Dcp, EgoMetric::Ddc, EgoMetric::Ddp, EgoMetric::Ddcp};

constexpr std::string_view to_string(EgoMetric m) noexcept {
  switch (m) {
    case EgoMetric::Dd: return "d";
    case EgoMetric::Dc: return "c";
    case EgoMetric::Dp: return "p";
    case EgoMetric::Dsum: return "sum";
    case EgoMetric::Dcp: return "cp";
    case EgoMetric::Ddc: return "dc";
    case EgoMetric::Ddp: return "dp";
    case EgoMetric::Ddcp: return "dcp";
  }
  return "?";
}

inline std::optional<EgoMetric> parse_ego_metric(std::string_view name) {
  for (EgoMetric m : kAllEgoMetrics)
    if (to_string(m) == name) return m;
  return std::nullopt;
}

/// Axis sets whose CDFs a metric reads. Dsum reads the three 1D CDFs.
inline std::vector<AxisSet> required_axes(EgoMetric m) {
  switch (m) {
    case EgoMetric::Dd: return {AxisSet{Axis::D}};
    case EgoMetric::Dc: return {AxisSet{Axis::C}};
    case EgoMetric::Dp: return {AxisSet{Axis::P}};
    case EgoMetric::Dsum: return {AxisSet{Axis::D}, AxisSet{Axis::C}, AxisSet{Axis::P}};
    case EgoMetric::Dcp: return {AxisSet{Axis::C, Axis::P}};
    case EgoMetric::Ddc: return {AxisSet{Axis::D, Axis::C}};
    case EgoMetric::Ddp: return {AxisSet{Axis::D, Axis::P}};
    case EgoMetric::Ddcp: return {AxisSet{Axis::D, Axis::C, Axis::P}};
  }
  return {};
}

/// Features of one graph plus the CDFs built from them at a fixed delta.
/// Distributions are built on demand by prepare(); once prepared, the
/// profile is read-only and safe to share between threads.
class EgoProfile {
 public:
  EgoProfile(EgonetFeatureTable features, double delta)
      : features_(std::move(features)), delta_(delta), bins_(bins_for_delta(delta)) {}

  EgoProfile(const WeightedGraph& g, double delta, std::size_t workers = 1)
      : EgoProfile(compute_features(g, workers), delta) {}

  const EgonetFeatureTable& features() const noexcept { return features_; }
  double delta() const noexcept { return delta_; }
  std::size_t bins() const noexcept { return bins_; }

  void prepare(AxisSet axes) {
    auto& slot = cache_[axes.mask()];
    if (!slot) slot.emplace(make_distribution(features_, axes, delta_));
  }

  void prepare(EgoMetric m) {
    for (AxisSet a : required_axes(m)) prepare(a);
  }

  /// Drops cached distributions (the 3D grid is r^3 cells).
  void release() {
    for (auto& slot : cache_) slot.reset();
  }

  const FeatureDistribution& distribution(AxisSet axes) const {
    const auto& slot = cache_[axes.mask()];
    if (!slot)
      throw Error(ErrorKind::InvalidArgument,
                  "distribution '" + axes.name() + "' not prepared");
    return *slot;
  }

 private:
  EgonetFeatureTable features_;
  double delta_;
  std::size_t bins_;
  std::array<std::optional<FeatureDistribution>, 8> cache_;
};

/// Ego-distance between two prepared profiles. Both must share delta.
inline double ego_distance(const EgoProfile& a, const EgoProfile& b, EgoMetric m) {
  if (a.bins() != b.bins())
    throw Error(ErrorKind::DeltaMismatch,
                "delta " + std::to_string(a.delta()) + " vs " + std::to_string(b.delta()));
  auto one = [&](AxisSet axes) {
    return cdf_distance(a.distribution(axes), b.distribution(axes));
  };
  switch (m) {
    case EgoMetric::Dsum:
      return (one({Axis::D}) + one({Axis::C}) + one({Axis::P})) / 3.0;
    default:
      return one(required_axes(m).front());
  }
}

inline double ego_distance(const WeightedGraph& a, const WeightedGraph& b, EgoMetric m,
                           double delta = 0.01) {
  EgoProfile pa(a, delta), pb(b, delta);
  pa.prepare(m);
  pb.prepare(m);
  return ego_distance(pa, pb, m);
}

}  // namespace egodist
