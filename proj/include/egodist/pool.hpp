#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>
#include <string>
#include <vector>

#include "egodist/edge_list.hpp"
#include "egodist/generators.hpp"
#include "egodist/parallel.hpp"

namespace egodist {

// Pool manifest: comment lines start with '#', then a header row
// "file,model,n,rho,seed" and one row per graph. File paths are relative to
// the manifest's directory.

struct ManifestRow {
  std::string file;
  ModelSpec spec;
};

inline void write_manifest(const std::vector<ManifestRow>& rows, std::ostream& out,
                           const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "file,model,n,rho,seed\n";
  for (const auto& r : rows)
    out << r.file << ',' << to_string(r.spec.model) << ',' << r.spec.n << ','
        << format_rho(r.spec.rho) << ',' << r.spec.seed << '\n';
}

inline std::vector<ManifestRow> read_manifest(std::istream& in, const std::string& source) {
  std::vector<ManifestRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (!header) {
      if (text != "file,model,n,rho,seed")
        throw Error(ErrorKind::MissingHeader,
                    source + ":" + std::to_string(lineno) + ": expected 'file,model,n,rho,seed'");
      header = true;
      continue;
    }
    std::vector<std::string_view> f;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      f.push_back(text.substr(start, comma == std::string_view::npos ? text.size() - start
                                                                     : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    auto bad = [&](const std::string& why) {
      return Error(ErrorKind::MalformedLine, source + ":" + std::to_string(lineno) + ": " + why);
    };
    if (f.size() != 5) throw bad("expected 5 fields");
    ManifestRow row;
    row.file = std::string(f[0]);
    if (row.file.empty()) throw Error(ErrorKind::UntaggedGraph, source + ":" + std::to_string(lineno));
    try {
      row.spec.model = parse_model(f[1]);
    } catch (const Error&) {
      throw Error(ErrorKind::UntaggedGraph,
                  source + ":" + std::to_string(lineno) + ": model '" + std::string(f[1]) + "'");
    }
    if (!detail::parse_integer(f[2], row.spec.n)) throw bad("bad n");
    if (!detail::parse_double(f[3], row.spec.rho)) throw bad("bad rho");
    if (!detail::parse_integer(f[4], row.spec.seed)) throw bad("bad seed");
    rows.push_back(std::move(row));
  }
  if (!header) throw Error(ErrorKind::MissingHeader, source + ": empty manifest");
  return rows;
}

/// Loads every graph listed in a manifest. Replica indices are recovered
/// by counting rows per (model, n, rho) in file order.
inline std::vector<PoolEntry> load_pool(const std::filesystem::path& manifest,
                                        std::size_t workers = 1) {
  auto in = detail::open_for_read(manifest);
  const auto rows = read_manifest(in, manifest.string());
  const auto dir = manifest.parent_path();
  std::vector<PoolEntry> pool(rows.size());
  std::map<std::tuple<Model, std::size_t, double>, std::size_t> seen;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    pool[k].spec = rows[k].spec;
    pool[k].replica = seen[{rows[k].spec.model, rows[k].spec.n, rows[k].spec.rho}]++;
  }
  parallel_for(rows.size(), workers, [&](std::size_t k) {
    pool[k].graph = read_edge_list(dir / rows[k].file);
  });
  return pool;
}

}  // namespace egodist
