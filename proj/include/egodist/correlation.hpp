#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egodist/distance_matrix.hpp"
#include "egodist/edge_list.hpp"
#include "egodist/features.hpp"
#include "egodist/graph.hpp"

namespace egodist {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// Daily closing prices: one row per date, one column per series. Missing
/// observations are NaN.
struct PriceTable {
  std::vector<std::string> names;
  std::vector<std::string> dates;
  std::vector<std::vector<double>> rows;  // rows[t][series]
};

/// Reads "date,<series...>" CSV. Empty, NA and NaN cells are missing.
inline PriceTable read_prices_csv(std::istream& in, const std::string& source = "<prices>") {
  PriceTable table;
  std::string line;
  std::size_t lineno = 0;
  auto split = [](std::string_view s) {
    std::vector<std::string_view> f;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      f.push_back(detail::trim(s.substr(start, comma == std::string_view::npos
                                                   ? s.size() - start
                                                   : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return f;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto f = split(text);
    const auto where = source + ":" + std::to_string(lineno);
    if (table.names.empty()) {
      if (f.size() < 2) throw Error(ErrorKind::MissingHeader, where + ": need date + series columns");
      for (std::size_t k = 1; k < f.size(); ++k) table.names.emplace_back(f[k]);
      continue;
    }
    if (f.size() != table.names.size() + 1)
      throw Error(ErrorKind::MisalignedSeries, where + ": expected " +
                                                   std::to_string(table.names.size() + 1) +
                                                   " fields, got " + std::to_string(f.size()));
    if (!table.dates.empty() && std::string_view(table.dates.back()) >= f[0])
      throw Error(ErrorKind::MisalignedSeries, where + ": dates must be strictly increasing");
    std::vector<double> row(table.names.size(), kMissing);
    for (std::size_t k = 1; k < f.size(); ++k) {
      const auto cell = f[k];
      if (cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan") continue;
      double v;
      if (!detail::parse_double(cell, v))
        throw Error(ErrorKind::MalformedLine, where + ": bad price '" + std::string(cell) + "'");
      if (!(v > 0.0))
        throw Error(ErrorKind::NonPositivePrice,
                    where + ": series " + table.names[k - 1] + " price " + std::string(cell));
      row[k - 1] = v;
    }
    table.dates.emplace_back(f[0]);
    table.rows.push_back(std::move(row));
  }
  if (table.names.empty()) throw Error(ErrorKind::MissingHeader, source + ": empty price file");
  return table;
}

/// Ratio returns y[t+1] / y[t] (length T-1).
inline std::vector<double> returns_from_prices(std::span<const double> prices) {
  for (std::size_t t = 0; t < prices.size(); ++t)
    if (!(prices[t] > 0.0))
      throw Error(ErrorKind::NonPositivePrice, "price at index " + std::to_string(t));
  std::vector<double> r;
  if (prices.size() < 2) return r;
  r.reserve(prices.size() - 1);
  for (std::size_t t = 0; t + 1 < prices.size(); ++t) r.push_back(prices[t + 1] / prices[t]);
  return r;
}

struct Window {
  std::string label;
  std::size_t begin;  // row range [begin, end) in the return panel
  std::size_t end;
};

/// Returns per series, one row per date (the later date of each ratio),
/// partitioned into consecutive windows.
struct ReturnPanel {
  std::vector<std::string> names;
  std::vector<std::string> dates;
  std::vector<std::vector<double>> rows;  // rows[t][series], NaN if missing
  std::vector<Window> windows;

  std::size_t series() const noexcept { return names.size(); }
};

enum class WindowPolicy { Quarterly, Monthly, FixedLength };

inline ReturnPanel returns_panel(const PriceTable& prices) {
  ReturnPanel panel;
  panel.names = prices.names;
  for (std::size_t t = 1; t < prices.rows.size(); ++t) {
    std::vector<double> row(prices.names.size(), kMissing);
    for (std::size_t s = 0; s < row.size(); ++s) {
      const double a = prices.rows[t - 1][s], b = prices.rows[t][s];
      if (!std::isnan(a) && !std::isnan(b)) row[s] = b / a;
    }
    panel.dates.push_back(prices.dates[t]);
    panel.rows.push_back(std::move(row));
  }
  return panel;
}

/// Splits the panel rows into windows. Calendar policies read ISO dates
/// (YYYY-MM-DD); FixedLength uses blocks of `length` rows.
inline void assign_windows(ReturnPanel& panel, WindowPolicy policy, std::size_t length = 0) {
  panel.windows.clear();
  if (policy == WindowPolicy::FixedLength) {
    if (length == 0) throw Error(ErrorKind::InvalidArgument, "window length must be positive");
    for (std::size_t b = 0, k = 0; b < panel.rows.size(); b += length, ++k)
      panel.windows.push_back({"w" + std::to_string(k + 1), b, std::min(panel.rows.size(), b + length)});
    return;
  }
  auto key_of = [&](const std::string& date) {
    if (date.size() < 7 || date[4] != '-')
      throw Error(ErrorKind::MalformedLine, "date '" + date + "' is not YYYY-MM-DD");
    const int month = std::stoi(date.substr(5, 2));
    if (month < 1 || month > 12) throw Error(ErrorKind::MalformedLine, "date '" + date + "'");
    if (policy == WindowPolicy::Monthly) return date.substr(0, 7);
    return date.substr(0, 4) + "Q" + std::to_string((month - 1) / 3 + 1);
  };
  for (std::size_t t = 0; t < panel.rows.size(); ++t) {
    const auto key = key_of(panel.dates[t]);
    if (panel.windows.empty() || panel.windows.back().label != key)
      panel.windows.push_back({key, t, t + 1});
    else
      panel.windows.back().end = t + 1;
  }
}

/// Series k over window w standardized to zero mean and unit (population)
/// variance over its observed values; missing entries stay NaN.
inline std::vector<double> standardized_series(const ReturnPanel& panel, std::size_t w,
                                               std::size_t k) {
  const auto& win = panel.windows.at(w);
  std::vector<double> u;
  u.reserve(win.end - win.begin);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t t = win.begin; t < win.end; ++t) {
    const double x = panel.rows[t][k];
    u.push_back(x);
    if (!std::isnan(x)) {
      sum += x;
      ++count;
    }
  }
  if (count == 0) return u;
  const double mean = sum / static_cast<double>(count);
  double ss = 0.0;
  for (double x : u)
    if (!std::isnan(x)) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(count));
  if (!(sd > 0.0))
    throw Error(ErrorKind::ConstantSeries,
                "series " + panel.names[k] + " is constant in window " + win.label);
  for (double& x : u)
    if (!std::isnan(x)) x = (x - mean) / sd;
  return u;
}

/// Pearson correlation over observations present in both series.
inline double pearson(std::span<const double> a, std::span<const double> b,
                      const std::string& what = "pair") {
  double sa = 0.0, sb = 0.0;
  std::size_t n = 0;
  for (std::size_t t = 0; t < a.size(); ++t)
    if (!std::isnan(a[t]) && !std::isnan(b[t])) {
      sa += a[t];
      sb += b[t];
      ++n;
    }
  if (n < 3) throw Error(ErrorKind::WindowTooShort, what + ": fewer than 3 common observations");
  const double ma = sa / static_cast<double>(n), mb = sb / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t)
    if (!std::isnan(a[t]) && !std::isnan(b[t])) {
      const double x = a[t] - ma, y = b[t] - mb;
      sxy += x * y;
      sxx += x * x;
      syy += y * y;
    }
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw Error(ErrorKind::ConstantSeries, what + ": constant over common observations");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Lower bound on mapped weights: rho = -1 maps to 0, which the graph model
/// forbids, so such edges are kept at this floor.
inline constexpr double kCorrelationWeightFloor = 1e-12;

struct CorrelationGraph {
  std::string window;
  std::vector<std::string> names;  // node id -> series name
  WeightedGraph graph;
};

/// Complete graph over the series present in window w, w_ij = (rho_ij + 1) / 2.
/// Series missing more than `max_missing` of the window's rows are dropped.
inline CorrelationGraph correlation_graph(const ReturnPanel& panel, std::size_t w,
                                         double max_missing = 0.2) {
  const auto& win = panel.windows.at(w);
  const std::size_t len = win.end - win.begin;
  if (len < 3)
    throw Error(ErrorKind::WindowTooShort,
                "window " + win.label + " has " + std::to_string(len) + " observations");
  CorrelationGraph out;
  out.window = win.label;
  std::vector<std::vector<double>> kept;
  for (std::size_t k = 0; k < panel.series(); ++k) {
    std::size_t missing = 0;
    for (std::size_t t = win.begin; t < win.end; ++t) missing += std::isnan(panel.rows[t][k]);
    if (static_cast<double>(missing) > max_missing * static_cast<double>(len)) continue;
    kept.push_back(standardized_series(panel, w, k));
    out.names.push_back(panel.names[k]);
  }
  if (kept.empty())
    throw Error(ErrorKind::WindowTooShort, "window " + win.label + " has no usable series");
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      const double rho = pearson(kept[i], kept[j], out.names[i] + "/" + out.names[j] + " in " + win.label);
      const double weight = std::max(kCorrelationWeightFloor, (rho + 1.0) / 2.0);
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), weight});
    }
  out.graph = build_graph(kept.size(), edges);
  return out;
}

struct TracePoint {
  std::string window;
  double mean_distance;      // d_t
  double median_clustering;  // median of c_i over nodes of G^t
};

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

/// d_t = (1 / (T - 1)) * sum over h != t of D(G^t, G^h).
inline std::vector<TracePoint> rolling_distance_trace(std::span<const WeightedGraph> graphs,
                                                      std::span<const std::string> labels,
                                                      Metric metric = Metric::Dsum,
                                                      const PairwiseOptions& opt = {}) {
  if (graphs.size() < 2) throw Error(ErrorKind::InvalidArgument, "trace needs at least 2 windows");
  std::vector<std::string> names(labels.begin(), labels.end());
  if (names.empty())
    for (std::size_t t = 0; t < graphs.size(); ++t) names.push_back("w" + std::to_string(t + 1));
  const auto dm = pairwise_distances(graphs, metric, opt, names);
  std::vector<TracePoint> out;
  const double denom = static_cast<double>(graphs.size() - 1);
  for (std::size_t t = 0; t < graphs.size(); ++t) {
    double sum = 0.0;
    for (std::size_t h = 0; h < graphs.size(); ++h)
      if (h != t) sum += dm(t, h);
    out.push_back({names[t], sum / denom, median(weighted_clustering(graphs[t]))});
  }
  return out;
}

inline void write_trace_csv(std::span<const TracePoint> trace, std::ostream& out,
                            const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "window,d_t,median_clustering\n";
  for (const auto& p : trace)
    out << p.window << ',' << detail::format_double(p.mean_distance) << ','
        << detail::format_double(p.median_clustering) << '\n';
}

}  // namespace egodist
