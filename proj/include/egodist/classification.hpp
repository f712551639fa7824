#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egodist/distance_matrix.hpp"
#include "egodist/generators.hpp"

namespace egodist {

enum class DegreeClass { Homogeneous, Heterogeneous, Mixed };

/// Ground truth for one unordered pool pair i < j. A pair is positive iff
/// both graphs come from the same model, weighting scheme included.
struct PairLabel {
  std::size_t i = 0;
  std::size_t j = 0;
  bool positive = false;
  bool same_size_density = false;
  DegreeClass degree_class = DegreeClass::Mixed;
};

inline std::vector<PairLabel> label_pairs(std::span<const ModelSpec> specs) {
  std::vector<PairLabel> out;
  out.reserve(specs.size() * (specs.size() - (specs.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t j = i + 1; j < specs.size(); ++j) {
      const auto& a = specs[i];
      const auto& b = specs[j];
      PairLabel l;
      l.i = i;
      l.j = j;
      l.positive = a.model == b.model;
      l.same_size_density = a.n == b.n && a.rho == b.rho;
      const bool ha = is_degree_homogeneous(a.model), hb = is_degree_homogeneous(b.model);
      l.degree_class = ha && hb   ? DegreeClass::Homogeneous
                       : !ha && !hb ? DegreeClass::Heterogeneous
                                    : DegreeClass::Mixed;
      out.push_back(l);
    }
  return out;
}

inline std::vector<PairLabel> label_pairs(std::span<const PoolEntry> pool) {
  std::vector<ModelSpec> specs;
  specs.reserve(pool.size());
  for (const auto& e : pool) specs.push_back(e.spec);
  return label_pairs(specs);
}

/// Pair subsets evaluated separately. The homogeneous/heterogeneous strata
/// keep only pairs whose graphs both belong to that degree family.
enum class Stratum {
  All,
  SameSizeDensity,
  HomogeneousAll,
  HomogeneousSame,
  HeterogeneousAll,
  HeterogeneousSame
};

inline constexpr std::array<Stratum, 6> kAllStrata = {
    Stratum::All,           Stratum::SameSizeDensity,  Stratum::HomogeneousAll,
    Stratum::HomogeneousSame, Stratum::HeterogeneousAll, Stratum::HeterogeneousSame};

constexpr std::string_view to_string(Stratum s) noexcept {
  switch (s) {
    case Stratum::All: return "all";
    case Stratum::SameSizeDensity: return "same";
    case Stratum::HomogeneousAll: return "hom_all";
    case Stratum::HomogeneousSame: return "hom_same";
    case Stratum::HeterogeneousAll: return "het_all";
    case Stratum::HeterogeneousSame: return "het_same";
  }
  return "?";
}

constexpr bool in_stratum(const PairLabel& l, Stratum s) noexcept {
  switch (s) {
    case Stratum::All: return true;
    case Stratum::SameSizeDensity: return l.same_size_density;
    case Stratum::HomogeneousAll: return l.degree_class == DegreeClass::Homogeneous;
    case Stratum::HomogeneousSame:
      return l.degree_class == DegreeClass::Homogeneous && l.same_size_density;
    case Stratum::HeterogeneousAll: return l.degree_class == DegreeClass::Heterogeneous;
    case Stratum::HeterogeneousSame:
      return l.degree_class == DegreeClass::Heterogeneous && l.same_size_density;
  }
  return false;
}

struct PRPoint {
  double epsilon;  // pairs with D < epsilon are predicted positive
  double precision;
  double recall;
  double f1;
};

struct PRCurve {
  std::string stratum;
  std::vector<PRPoint> points;
  double aupr = 0.0;
  std::size_t pairs = 0;
  std::size_t positives = 0;

  double prevalence() const noexcept {
    return pairs ? static_cast<double>(positives) / static_cast<double>(pairs) : 0.0;
  }
};

enum class AuprEstimator { Step, Trapezoid };

inline AuprEstimator parse_aupr_estimator(std::string_view s) {
  if (s == "step") return AuprEstimator::Step;
  if (s == "trapezoid") return AuprEstimator::Trapezoid;
  throw Error(ErrorKind::InvalidArgument, "aupr estimator must be step or trapezoid");
}

inline double f1_score(double precision, double recall) noexcept {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

/// Precision-recall sweep over every distinct distance value. Ties move to
/// predicted-positive together: for a value v the threshold is the next
/// double above v. Throws NoPositives if no pair is an actual positive.
inline PRCurve pr_curve(std::span<const double> distances, std::span<const bool> positive,
                        AuprEstimator estimator = AuprEstimator::Step,
                        std::string stratum = "all") {
  if (distances.size() != positive.size())
    throw Error(ErrorKind::InvalidArgument, "distance/label length mismatch");
  PRCurve curve;
  curve.stratum = std::move(stratum);
  curve.pairs = distances.size();
  curve.positives = static_cast<std::size_t>(std::count(positive.begin(), positive.end(), true));
  if (curve.positives == 0)
    throw Error(ErrorKind::NoPositives, "stratum '" + curve.stratum + "' has no positive pairs");

  std::vector<std::size_t> order(distances.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return distances[a] < distances[b]; });

  const double total_pos = static_cast<double>(curve.positives);
  std::size_t tp = 0, fp = 0;
  double prev_recall = 0.0, prev_precision = 0.0;
  for (std::size_t k = 0; k < order.size();) {
    const double v = distances[order[k]];
    while (k < order.size() && distances[order[k]] == v) {
      (positive[order[k]] ? tp : fp) += 1;
      ++k;
    }
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / total_pos;
    if (curve.points.empty()) prev_precision = precision;
    const double dr = recall - prev_recall;
    curve.aupr += estimator == AuprEstimator::Step ? dr * precision
                                                   : dr * 0.5 * (precision + prev_precision);
    curve.points.push_back({std::nextafter(v, std::numeric_limits<double>::infinity()),
                            precision, recall, f1_score(precision, recall)});
    prev_recall = recall;
    prev_precision = precision;
  }
  curve.aupr = std::clamp(curve.aupr, 0.0, 1.0);
  return curve;
}

inline PRCurve pr_curve(const DistanceMatrix& m, std::span<const PairLabel> labels,
                        Stratum stratum, AuprEstimator estimator = AuprEstimator::Step) {
  std::vector<double> d;
  std::size_t count = 0;
  for (const auto& l : labels) {
    if (l.i >= m.size() || l.j >= m.size())
      throw Error(ErrorKind::InvalidArgument, "pair label outside distance matrix");
    count += in_stratum(l, stratum);
  }
  // std::vector<bool> is not contiguous, so flags live in a plain array.
  auto pos = std::make_unique<bool[]>(count);
  d.reserve(count);
  for (const auto& l : labels) {
    if (!in_stratum(l, stratum)) continue;
    pos[d.size()] = l.positive;
    d.push_back(m(l.i, l.j));
  }
  return pr_curve(d, std::span<const bool>(pos.get(), count), estimator,
                  std::string(to_string(stratum)));
}

inline void write_pr_curve_csv(const PRCurve& c, std::ostream& out,
                               const std::vector<std::string>& comments = {}) {
  for (const auto& line : comments) out << "# " << line << '\n';
  out << "# stratum=" << c.stratum << " pairs=" << c.pairs << " positives=" << c.positives
      << " aupr=" << detail::format_double(c.aupr) << '\n';
  out << "epsilon,precision,recall,f1\n";
  for (const auto& p : c.points)
    out << detail::format_double(p.epsilon) << ',' << detail::format_double(p.precision) << ','
        << detail::format_double(p.recall) << ',' << detail::format_double(p.f1) << '\n';
}

/// AUPR per stratum for one metric; empty optional where a stratum has no
/// positive pairs in this pool.
struct ClassificationRow {
  Metric metric;
  std::array<std::optional<double>, kAllStrata.size()> aupr;
  std::vector<PRCurve> curves;

  std::optional<double> get(Stratum s) const { return aupr[static_cast<std::size_t>(s)]; }

  static std::optional<double> mean(std::optional<double> a, std::optional<double> b) {
    if (!a || !b) return std::nullopt;
    return 0.5 * (*a + *b);
  }
};

struct ClassificationReport {
  std::vector<ClassificationRow> rows;
  std::size_t pool_size = 0;

  const ClassificationRow& row(Metric m) const {
    for (const auto& r : rows)
      if (r.metric == m) return r;
    throw Error(ErrorKind::UnknownMetric, std::string(to_string(m)) + " not in report");
  }
};

inline ClassificationRow classify_matrix(const DistanceMatrix& m, Metric metric,
                                         std::span<const PairLabel> labels,
                                         AuprEstimator estimator) {
  ClassificationRow row;
  row.metric = metric;
  for (Stratum s : kAllStrata) {
    try {
      auto curve = pr_curve(m, labels, s, estimator);
      row.aupr[static_cast<std::size_t>(s)] = curve.aupr;
      row.curves.push_back(std::move(curve));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoPositives) throw;
    }
  }
  return row;
}

/// Distances over the whole pool for every metric, then AUPR per stratum.
inline ClassificationReport run_classification(std::span<const PoolEntry> pool,
                                               std::span<const Metric> metrics,
                                               const PairwiseOptions& opt = {},
                                               AuprEstimator estimator = AuprEstimator::Step) {
  if (pool.size() < 2) throw Error(ErrorKind::InvalidArgument, "pool needs at least 2 graphs");
  std::vector<WeightedGraph> graphs;
  graphs.reserve(pool.size());
  for (const auto& e : pool) graphs.push_back(e.graph);
  const auto labels = label_pairs(pool);

  ClassificationReport report;
  report.pool_size = pool.size();
  // Ego metrics share one feature pass.
  std::vector<EgonetFeatureTable> features;
  for (Metric m : metrics) {
    DistanceMatrix dm;
    if (auto ego = as_ego_metric(m)) {
      if (features.empty()) {
        features.resize(graphs.size());
        parallel_for(graphs.size(), opt.workers,
                     [&](std::size_t k) { features[k] = compute_features(graphs[k]); });
      }
      dm = pairwise_distances(std::span<const EgonetFeatureTable>(features), *ego, opt);
    } else {
      dm = pairwise_distances(std::span<const WeightedGraph>(graphs), m, opt);
    }
    report.rows.push_back(classify_matrix(dm, m, labels, estimator));
  }
  return report;
}

inline void write_classification_csv(const ClassificationReport& r, std::ostream& out,
                                      const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "metric,all,same,avg,hom_all,hom_same,hom_avg,het_all,het_same,het_avg\n";
  auto cell = [](std::optional<double> v) {
    if (!v) return std::string("NA");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return std::string(buf);
  };
  for (const auto& row : r.rows) {
    const auto a = row.get(Stratum::All), s = row.get(Stratum::SameSizeDensity);
    const auto ha = row.get(Stratum::HomogeneousAll), hs = row.get(Stratum::HomogeneousSame);
    const auto ea = row.get(Stratum::HeterogeneousAll), es = row.get(Stratum::HeterogeneousSame);
    out << to_string(row.metric) << ',' << cell(a) << ',' << cell(s) << ','
        << cell(ClassificationRow::mean(a, s)) << ',' << cell(ha) << ',' << cell(hs) << ','
        << cell(ClassificationRow::mean(ha, hs)) << ',' << cell(ea) << ',' << cell(es) << ','
        << cell(ClassificationRow::mean(ea, es)) << '\n';
  }
}

}  // namespace egodist
