#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "egodist/graph.hpp"

namespace egodist {

// Text edge-list format (".wel"):
//
//   # nodes=<N>
//   # any other comment line
//   u v w
//
// Ids are integers in [0, N), w is a positive decimal. The nodes header is
// mandatory so isolated nodes survive a round trip. CRLF is accepted on read.

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_integer(std::string_view s, T& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

inline bool parse_double(std::string_view s, double& out) {
  // strtod keeps exact round-trip of %.17g output; from_chars for double is
  // not available in every libstdc++ we target.
  std::string tmp(s);
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return !tmp.empty() && end == tmp.c_str() + tmp.size();
}

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Raw parse of the edge-list body; duplicates/self-loops are left to the caller.
struct RawEdgeList {
  std::size_t n = 0;
  std::vector<WeightedEdge> edges;
  std::vector<std::string> comments;
};

inline RawEdgeList parse_edge_list(std::istream& in, const std::string& source) {
  RawEdgeList raw;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto body = trim(text.substr(1));
      if (body.starts_with("nodes=")) {
        std::size_t n = 0;
        if (!parse_integer(trim(body.substr(6)), n) || n == 0)
          throw Error(ErrorKind::MalformedLine,
                      source + ":" + std::to_string(lineno) + ": bad nodes header");
        raw.n = n;
        have_header = true;
      } else {
        raw.comments.emplace_back(body);
      }
      continue;
    }
    if (!have_header)
      throw Error(ErrorKind::MissingHeader,
                  source + ": '# nodes=<N>' must precede the first edge (line " +
                      std::to_string(lineno) + ")");
    const auto fields = split_ws(text);
    WeightedEdge e{};
    if (fields.size() != 3 || !parse_integer(fields[0], e.u) ||
        !parse_integer(fields[1], e.v) || !parse_double(fields[2], e.w))
      throw Error(ErrorKind::MalformedLine,
                  source + ":" + std::to_string(lineno) + ": expected 'u v w'");
    raw.edges.push_back(e);
  }
  if (!have_header) throw Error(ErrorKind::MissingHeader, source + ": no '# nodes=<N>' line");
  return raw;
}

inline std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

}  // namespace detail

inline WeightedGraph read_edge_list(std::istream& in, const std::string& source = "<stream>") {
  auto raw = detail::parse_edge_list(in, source);
  return build_graph(raw.n, raw.edges);
}

inline WeightedGraph read_edge_list(const std::filesystem::path& path) {
  auto in = detail::open_for_read(path);
  return read_edge_list(in, path.string());
}

/// Writes edges sorted by (i, j), i < j, with 17 significant digits. Extra
/// comment lines go after the nodes header.
inline void write_edge_list(const WeightedGraph& g, std::ostream& out,
                            const std::vector<std::string>& comments = {}) {
  out << "# nodes=" << g.node_count() << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  for (const auto& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << detail::format_double(e.w) << '\n';
}

inline void write_edge_list(const WeightedGraph& g, const std::filesystem::path& path,
                            const std::vector<std::string>& comments = {}) {
  auto out = detail::open_for_write(path);
  write_edge_list(g, out, comments);
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

enum class SymmetrizeMode { Sum, Max };

/// Collapses a directed edge list (same text format, u->v records) into an
/// undirected graph: w_ij = w_(i->j) + w_(j->i) for Sum, the larger for Max.
/// Self-loops in the directed input are dropped.
inline WeightedGraph symmetrize_edge_list(std::istream& in, SymmetrizeMode mode,
                                          const std::string& source = "<stream>") {
  auto raw = detail::parse_edge_list(in, source);
  std::map<std::pair<NodeId, NodeId>, double> merged;
  for (const auto& e : raw.edges) {
    if (e.u >= raw.n || e.v >= raw.n)
      throw Error(ErrorKind::NodeOutOfRange, source + ": edge " + detail::edge_text(e));
    if (!(e.w > 0.0))
      throw Error(ErrorKind::NonPositiveWeight, source + ": edge " + detail::edge_text(e));
    if (e.u == e.v) continue;
    const auto key = std::minmax(e.u, e.v);
    auto [it, inserted] = merged.try_emplace({key.first, key.second}, e.w);
    if (!inserted) it->second = mode == SymmetrizeMode::Sum ? it->second + e.w
                                                            : std::max(it->second, e.w);
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(merged.size());
  for (const auto& [k, w] : merged) edges.push_back({k.first, k.second, w});
  return build_graph(raw.n, edges);
}

}  // namespace egodist
