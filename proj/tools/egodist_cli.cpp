#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egodist/backbone.hpp"
#include "egodist/bench.hpp"
#include "egodist/classification.hpp"
#include "egodist/correlation.hpp"
#include "egodist/pool.hpp"

namespace fs = std::filesystem;
using namespace egodist;

namespace {

struct Common {
  std::size_t workers = default_workers();
  double delta = 0.01;
};

// Output sink: a file, or stdout when the path is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    file_ = std::make_unique<std::ofstream>(detail::open_for_write(path));
    path_ = path;
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (!file_) {
      std::cout.flush();
      return;
    }
    file_->close();
    if (!*file_) throw Error(ErrorKind::Io, "write failed: " + path_);
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

std::vector<std::string> config_header(const std::string& cmd,
                                       const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string line = "egodist " + cmd;
  for (const auto& [k, v] : kv) line += " " + k + "=" + v;
  return {line};
}

std::string num(double x) { return detail::format_double(x); }

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = detail::trim(item);
    if (t.empty()) continue;
    double v;
    if (!detail::parse_double(t, v))
      throw Error(ErrorKind::InvalidArgument, std::string(what) + ": bad number '" + std::string(t) + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " list is empty");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& csv, const char* what) {
  std::vector<std::size_t> out;
  for (double v : parse_double_list(csv, what)) {
    if (!(v >= 1.0) || v != std::floor(v))
      throw Error(ErrorKind::InvalidArgument, std::string(what) + ": expected positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<Model> parse_model_list(const std::string& csv) {
  std::vector<Model> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = detail::trim(item);
    if (t == "all") {
      out.insert(out.end(), kAllModels.begin(), kAllModels.end());
    } else if (!t.empty()) {
      out.push_back(parse_model(t));
    }
  }
  if (out.empty()) throw Error(ErrorKind::UnknownModel, "empty model list");
  return out;
}

void progress(const std::string& msg) { std::cerr << msg << '\n'; }

void add_common(CLI::App* cmd, Common& common, bool with_delta) {
  cmd->add_option("--workers", common.workers, "Worker threads (default: EGODIST_WORKERS or hardware)")
      ->check(CLI::PositiveNumber);
  if (with_delta)
    cmd->add_option("--delta", common.delta, "CDF bin width; 1/delta must be an integer")
        ->capture_default_str();
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string models = "all";
  std::string sizes = "1000,2000,4000";
  std::string densities = "0.004,0.01,0.02";
  std::size_t replicas = 10;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string manifest = "manifest.csv";
};

int cmd_generate(const GenerateArgs& a, const Common& c) {
  PoolConfig cfg;
  cfg.models = parse_model_list(a.models);
  cfg.sizes = parse_size_list(a.sizes, "--n");
  cfg.densities = parse_double_list(a.densities, "--rho");
  cfg.replicas = a.replicas;
  cfg.base_seed = a.seed;
  const auto specs = pool_specs(cfg);
  progress("generating " + std::to_string(specs.size()) + " graphs");
  const auto pool = generate_pool(cfg, c.workers);
  fs::create_directories(a.out_dir);
  std::vector<ManifestRow> rows;
  for (const auto& e : pool) {
    const auto file = e.stem() + ".wel";
    write_edge_list(e.graph, fs::path(a.out_dir) / file,
                    {"model=" + std::string(to_string(e.spec.model)) + " n=" +
                     std::to_string(e.spec.n) + " rho=" + format_rho(e.spec.rho) +
                     " seed=" + std::to_string(e.spec.seed)});
    rows.push_back({file, e.spec});
  }
  Output out((fs::path(a.out_dir) / a.manifest).string());
  write_manifest(rows, out.stream(),
                 config_header("generate", {{"models", a.models},
                                            {"n", a.sizes},
                                            {"rho", a.densities},
                                            {"replicas", std::to_string(a.replicas)},
                                            {"seed", std::to_string(a.seed)}}));
  out.close();
  return 0;
}

// ---- features ---------------------------------------------------------------

int cmd_features(const std::string& in, const std::string& out_path, const Common& c) {
  const auto g = read_edge_list(fs::path(in));
  const auto f = compute_features(g, c.workers);
  Output out(out_path);
  for (const auto& line : config_header("features", {{"in", in}})) out.stream() << "# " << line << '\n';
  write_features_csv(f, out.stream());
  out.close();
  return 0;
}

// ---- distance / matrix ------------------------------------------------------

int cmd_distance(const std::string& a, const std::string& b, const std::string& metric,
                 const Common& c) {
  const auto m = parse_metric(metric);
  bins_for_delta(c.delta);
  const auto ga = read_edge_list(fs::path(a));
  const auto gb = read_edge_list(fs::path(b));
  std::printf("%s\n", num(graph_distance(ga, gb, m, c.delta)).c_str());
  return 0;
}

int cmd_matrix(const std::string& pool_path, const std::string& metric, const std::string& out_path,
               const Common& c) {
  const auto m = parse_metric(metric);
  bins_for_delta(c.delta);
  const auto pool = load_pool(pool_path, c.workers);
  std::vector<WeightedGraph> graphs;
  std::vector<std::string> labels;
  for (const auto& e : pool) {
    graphs.push_back(e.graph);
    labels.push_back(e.stem());
  }
  PairwiseOptions opt;
  opt.delta = c.delta;
  opt.workers = c.workers;
  progress("computing " + std::to_string(graphs.size() * (graphs.size() - 1) / 2) + " distances");
  const auto dm = pairwise_distances(std::span<const WeightedGraph>(graphs), m, opt, labels);
  Output out(out_path);
  write_distance_matrix_csv(dm, out.stream(),
                            config_header("matrix", {{"pool", pool_path},
                                                     {"metric", metric},
                                                     {"delta", num(c.delta)}}));
  out.close();
  return 0;
}

// ---- classify ---------------------------------------------------------------

struct ClassifyArgs {
  std::string pool;
  std::string metrics = "d,c,p,sum,cp,dc,dp,dcp,cglobal,spw,spl";
  std::string out;
  std::string pr_dir;
  std::string estimator = "step";
};

int cmd_classify(const ClassifyArgs& a, const Common& c) {
  const auto metrics = parse_metric_list(a.metrics);
  const auto est = parse_aupr_estimator(a.estimator);
  bins_for_delta(c.delta);
  const auto pool = load_pool(a.pool, c.workers);
  progress("loaded " + std::to_string(pool.size()) + " graphs");
  PairwiseOptions opt;
  opt.delta = c.delta;
  opt.workers = c.workers;
  const auto report = run_classification(pool, metrics, opt, est);
  const auto header = config_header("classify", {{"pool", a.pool},
                                                 {"metrics", a.metrics},
                                                 {"delta", num(c.delta)},
                                                 {"aupr-estimator", a.estimator}});
  Output out(a.out);
  write_classification_csv(report, out.stream(), header);
  out.close();
  if (!a.pr_dir.empty()) {
    fs::create_directories(a.pr_dir);
    for (const auto& row : report.rows)
      for (const auto& curve : row.curves) {
        const auto path = fs::path(a.pr_dir) /
                          (std::string(to_string(row.metric)) + "_" + curve.stratum + ".csv");
        auto f = detail::open_for_write(path);
        write_pr_curve_csv(curve, f, header);
        if (!f) throw Error(ErrorKind::Io, "write failed: " + path.string());
      }
  }
  return 0;
}

// ---- filter / sweep / symmetrize --------------------------------------------

int cmd_filter(const std::string& in, const std::string& kind, double param,
               const std::string& out_path) {
  FilterSpec spec{parse_filter_kind(kind), param};
  spec.validate();
  const auto g = read_edge_list(fs::path(in));
  const auto f = apply_filter(g, spec);
  progress("kept " + std::to_string(f.edge_count()) + " of " + std::to_string(g.edge_count()) +
           " edges, removed weight " + num(removed_weight_fraction(g, f)));
  Output out(out_path);
  write_edge_list(f, out.stream(),
                  config_header("filter", {{"in", in}, {"kind", kind}, {"param", num(param)}}));
  out.close();
  return 0;
}

int cmd_sweep(const std::string& in, const std::string& kind, const std::string& grid_csv,
              const std::string& metric, const std::string& out_path, const Common& c) {
  const auto k = parse_filter_kind(kind);
  const auto grid = parse_double_list(grid_csv, "--grid");
  const auto m = parse_metric(metric);
  bins_for_delta(c.delta);
  const auto g = read_edge_list(fs::path(in));
  const auto pts = pruning_sweep(g, k, grid, m, c.delta, c.workers);
  Output out(out_path);
  write_sweep_csv(pts, out.stream(),
                  config_header("sweep", {{"in", in},
                                          {"kind", kind},
                                          {"grid", grid_csv},
                                          {"metric", metric},
                                          {"delta", num(c.delta)}}));
  out.close();
  return 0;
}

int cmd_symmetrize(const std::string& in, const std::string& mode, const std::string& out_path) {
  SymmetrizeMode m;
  if (mode == "sum")
    m = SymmetrizeMode::Sum;
  else if (mode == "max")
    m = SymmetrizeMode::Max;
  else
    throw Error(ErrorKind::InvalidArgument, "--mode must be sum or max");
  auto f = detail::open_for_read(in);
  const auto g = symmetrize_edge_list(f, m, in);
  Output out(out_path);
  write_edge_list(g, out.stream(), config_header("symmetrize", {{"in", in}, {"mode", mode}}));
  out.close();
  return 0;
}

// ---- corrnet ----------------------------------------------------------------

struct CorrnetArgs {
  std::string prices;
  std::string window = "quarterly";
  std::string metric = "sum";
  double max_missing = 0.2;
  std::string out;
  std::string graphs_dir;
};

int cmd_corrnet(const CorrnetArgs& a, const Common& c) {
  const auto m = parse_metric(a.metric);
  bins_for_delta(c.delta);
  if (!(a.max_missing >= 0.0 && a.max_missing < 1.0))
    throw Error(ErrorKind::InvalidArgument, "--max-missing must lie in [0, 1)");
  WindowPolicy policy = WindowPolicy::FixedLength;
  std::size_t length = 0;
  if (a.window == "quarterly") {
    policy = WindowPolicy::Quarterly;
  } else if (a.window == "monthly") {
    policy = WindowPolicy::Monthly;
  } else if (!detail::parse_integer(a.window, length) || length == 0) {
    throw Error(ErrorKind::InvalidArgument, "--window must be quarterly, monthly or a row count");
  }
  auto in = detail::open_for_read(a.prices);
  const auto prices = read_prices_csv(in, a.prices);
  auto panel = returns_panel(prices);
  assign_windows(panel, policy, length);
  progress(std::to_string(panel.series()) + " series, " + std::to_string(panel.windows.size()) +
           " windows");
  std::vector<CorrelationGraph> cgs(panel.windows.size());
  parallel_for(cgs.size(), c.workers,
               [&](std::size_t w) { cgs[w] = correlation_graph(panel, w, a.max_missing); });
  std::vector<WeightedGraph> graphs;
  std::vector<std::string> labels;
  for (const auto& cg : cgs) {
    graphs.push_back(cg.graph);
    labels.push_back(cg.window);
  }
  if (!a.graphs_dir.empty()) {
    fs::create_directories(a.graphs_dir);
    for (const auto& cg : cgs) write_edge_list(cg.graph, fs::path(a.graphs_dir) / (cg.window + ".wel"));
  }
  PairwiseOptions opt;
  opt.delta = c.delta;
  opt.workers = c.workers;
  const auto trace = rolling_distance_trace(graphs, labels, m, opt);
  Output out(a.out);
  write_trace_csv(trace, out.stream(),
                  config_header("corrnet", {{"prices", a.prices},
                                            {"window", a.window},
                                            {"metric", a.metric},
                                            {"max-missing", num(a.max_missing)},
                                            {"delta", num(c.delta)}}));
  out.close();
  return 0;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string sizes = "250,500,1000";
  std::string densities = "0.008,0.016";
  std::string models = "all";
  std::string metric = "dcp";
  std::string mode = "pair";
  std::size_t replicas = 3;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_bench(const BenchArgs& a, const Common& c) {
  BenchConfig cfg;
  cfg.sizes = parse_size_list(a.sizes, "--sizes");
  cfg.densities = parse_double_list(a.densities, "--densities");
  cfg.models = parse_model_list(a.models);
  cfg.metric = parse_metric(a.metric);
  cfg.mode = parse_bench_mode(a.mode);
  cfg.replicas = a.replicas;
  cfg.seed = a.seed;
  cfg.delta = c.delta;
  cfg.workers = c.workers;
  bins_for_delta(c.delta);
  const auto rows = run_bench(cfg, [](const BenchRow& r) {
    progress("n=" + std::to_string(r.n) + " rho=" + format_rho(r.rho) + " " +
             std::to_string(r.pairs) + " pairs " + num(r.seconds) + " s");
  });
  auto header = config_header("bench", {{"sizes", a.sizes},
                                        {"densities", a.densities},
                                        {"models", a.models},
                                        {"metric", a.metric},
                                        {"mode", a.mode},
                                        {"replicas", std::to_string(a.replicas)},
                                        {"seed", std::to_string(a.seed)},
                                        {"delta", num(c.delta)}});
  const auto overall = fit_exponent(rows);
  header.push_back("alpha=" + num(overall.alpha));
  for (double rho : cfg.densities) {
    std::vector<BenchRow> sub;
    for (const auto& r : rows)
      if (r.rho == rho) sub.push_back(r);
    header.push_back("alpha[rho=" + format_rho(rho) + "]=" + num(fit_exponent(sub).alpha));
  }
  progress(header[1]);
  Output out(a.out);
  write_bench_csv(rows, out.stream(), header);
  out.close();
  return 0;
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Usage: return 1;
    case ErrorCategory::Input: return 2;
    case ErrorCategory::Computation: return 3;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alignment-free distances between weighted graphs"};
  app.require_subcommand(1);
  Common common;
  std::function<int()> run;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic graph pool and manifest");
  generate->add_option("--model", gen.models, "Comma-separated model names, or 'all'")->capture_default_str();
  generate->add_option("--n", gen.sizes, "Comma-separated node counts")->capture_default_str();
  generate->add_option("--rho", gen.densities, "Comma-separated densities")->capture_default_str();
  generate->add_option("--replicas", gen.replicas, "Replicas per (model, n, rho)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  generate->add_option("--seed", gen.seed, "Base seed")->capture_default_str();
  generate->add_option("--out-dir", gen.out_dir, "Output directory")->capture_default_str();
  generate->add_option("--manifest", gen.manifest, "Manifest file name inside --out-dir")->capture_default_str();
  add_common(generate, common, false);
  generate->callback([&] { run = [&] { return cmd_generate(gen, common); }; });

  std::string in, out, a, b, metric = "dcp", kind = "hard", pool, grid;
  double param = 0.5;
  auto* features = app.add_subcommand("features", "Per-node egonet features as CSV");
  features->add_option("--in", in, "Edge-list file")->required();
  features->add_option("--out", out, "Output CSV (default stdout)");
  add_common(features, common, false);
  features->callback([&] { run = [&] { return cmd_features(in, out, common); }; });

  auto* distance = app.add_subcommand("distance", "Distance between two graphs");
  distance->add_option("--a", a, "First edge-list file")->required();
  distance->add_option("--b", b, "Second edge-list file")->required();
  distance->add_option("--metric", metric, "d,c,p,sum,cp,dc,dp,dcp,cglobal,spw,spl")->capture_default_str();
  add_common(distance, common, true);
  distance->callback([&] { run = [&] { return cmd_distance(a, b, metric, common); }; });

  auto* matrix = app.add_subcommand("matrix", "All-pairs distance matrix over a pool");
  matrix->add_option("--pool", pool, "Pool manifest")->required();
  matrix->add_option("--metric", metric, "Distance metric")->capture_default_str();
  matrix->add_option("--out", out, "Output CSV (default stdout)");
  add_common(matrix, common, true);
  matrix->callback([&] { run = [&] { return cmd_matrix(pool, metric, out, common); }; });

  ClassifyArgs cls;
  auto* classify = app.add_subcommand("classify", "Precision-recall classification over a pool");
  classify->add_option("--pool", cls.pool, "Pool manifest")->required();
  classify->add_option("--metrics", cls.metrics, "Comma-separated metrics")->capture_default_str();
  classify->add_option("--out", cls.out, "AUPR report CSV (default stdout)");
  classify->add_option("--pr-dir", cls.pr_dir, "Directory for per-metric PR curve CSVs");
  classify->add_option("--aupr-estimator", cls.estimator, "step or trapezoid")->capture_default_str();
  add_common(classify, common, true);
  classify->callback([&] { run = [&] { return cmd_classify(cls, common); }; });

  auto* filter = app.add_subcommand("filter", "Backbone of a weighted graph");
  filter->add_option("--in", in, "Edge-list file")->required();
  filter->add_option("--kind", kind, "hard or disparity")->capture_default_str();
  filter->add_option("--param", param, "gamma (hard) or alpha (disparity), in (0, 1)")->required();
  filter->add_option("--out", out, "Output edge list (default stdout)");
  filter->callback([&] { run = [&] { return cmd_filter(in, kind, param, out); }; });

  auto* sweep = app.add_subcommand("sweep", "Removed weight and distance over a filter grid");
  sweep->add_option("--in", in, "Edge-list file")->required();
  sweep->add_option("--kind", kind, "hard or disparity")->capture_default_str();
  sweep->add_option("--grid", grid, "Comma-separated parameter values")->required();
  sweep->add_option("--metric", metric, "Distance metric")->capture_default_str();
  sweep->add_option("--out", out, "Output CSV (default stdout)");
  add_common(sweep, common, true);
  sweep->callback([&] { run = [&] { return cmd_sweep(in, kind, grid, metric, out, common); }; });

  std::string sym_mode = "sum";
  auto* symmetrize = app.add_subcommand("symmetrize", "Undirected graph from a directed edge list");
  symmetrize->add_option("--in", in, "Directed edge-list file")->required();
  symmetrize->add_option("--mode", sym_mode, "sum or max")->capture_default_str();
  symmetrize->add_option("--out", out, "Output edge list (default stdout)");
  symmetrize->callback([&] { run = [&] { return cmd_symmetrize(in, sym_mode, out); }; });

  CorrnetArgs cn;
  auto* corrnet = app.add_subcommand("corrnet", "Rolling distance trace of correlation graphs");
  corrnet->add_option("--prices", cn.prices, "Prices CSV: date column then one column per series")->required();
  corrnet->add_option("--window", cn.window, "quarterly, monthly or a row count")->capture_default_str();
  corrnet->add_option("--metric", cn.metric, "Distance metric")->capture_default_str();
  corrnet->add_option("--max-missing", cn.max_missing, "Drop series missing more than this fraction of a window")
      ->capture_default_str();
  corrnet->add_option("--graphs-dir", cn.graphs_dir, "Also write each window's graph here");
  corrnet->add_option("--out", cn.out, "Trace CSV (default stdout)");
  add_common(corrnet, common, true);
  corrnet->callback([&] { run = [&] { return cmd_corrnet(cn, common); }; });

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Timing of all-pairs distances versus N");
  bench->add_option("--sizes", bn.sizes, "Comma-separated node counts")->capture_default_str();
  bench->add_option("--densities", bn.densities, "Comma-separated densities")->capture_default_str();
  bench->add_option("--models", bn.models, "Comma-separated models, or 'all'")->capture_default_str();
  bench->add_option("--metric", bn.metric, "Distance metric")->capture_default_str();
  bench->add_option("--mode", bn.mode, "pair (each distance from scratch) or pool (cached)")->capture_default_str();
  bench->add_option("--replicas", bn.replicas, "Replicas per model")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", bn.seed, "Base seed")->capture_default_str();
  bench->add_option("--out", bn.out, "Timing CSV (default stdout)");
  add_common(bench, common, true);
  bench->callback([&] { run = [&] { return cmd_bench(bn, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "egodist: " << e.what() << '\n';
    return 1;
  }

  try {
    return run();
  } catch (const Error& e) {
    std::cerr << "egodist: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "egodist: i/o error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "egodist: " << e.what() << '\n';
    return 3;
  }
}
