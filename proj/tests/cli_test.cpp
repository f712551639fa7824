#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
};

// Runs the CLI with stderr discarded (or captured when requested).
Result run(const std::string& args, bool capture_stderr = false) {
  const std::string cmd = std::string(EGODIST_CLI_PATH) + " " + args +
                          (capture_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("egodist_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("nosuch").status, 1);
  const auto missing = run("distance --a x", true);
  EXPECT_EQ(missing.status, 1);
  EXPECT_EQ(std::count(missing.out.begin(), missing.out.end(), '\n'), 1);
}

TEST_F(Cli, GenerateIsReproducible) {
  const std::string args = "generate --model ER_U --n 100 --rho 0.1 --seed 7 --replicas 1 --out-dir ";
  ASSERT_EQ(run(args + path("a")).status, 0);
  ASSERT_EQ(run(args + path("b")).status, 0);
  const std::string file = "ER_U_N100_rho0.1_rep0.wel";
  EXPECT_EQ(slurp(dir_ / "a" / file), slurp(dir_ / "b" / file));
  EXPECT_EQ(slurp(dir_ / "a" / "manifest.csv"), slurp(dir_ / "b" / "manifest.csv"));
  EXPECT_FALSE(slurp(dir_ / "a" / file).empty());
}

TEST_F(Cli, DistanceOnIdenticalFilesIsZero) {
  write("g.wel", "# nodes=4\n0 1 1\n1 2 2\n2 3 0.5\n0 2 1\n");
  write("h.wel", "# nodes=3\n0 1 1\n");
  const auto g = path("g.wel");
  for (const char* m : {"dcp", "sum", "d", "cglobal", "spw", "spl"}) {
    const auto r = run("distance --a " + g + " --b " + g + " --metric " + m);
    EXPECT_EQ(r.status, 0) << m;
    EXPECT_EQ(r.out, "0\n") << m;
  }
  const auto r = run("distance --a " + g + " --b " + path("h.wel"));
  EXPECT_EQ(r.status, 0);
  EXPECT_GT(std::stod(r.out), 0.0);
}

TEST_F(Cli, ExitCodesByCategory) {
  write("bad.wel", "# nodes=2\n0 1 -1\n");
  write("g.wel", "# nodes=2\n0 1 1\n");
  const auto g = path("g.wel");
  EXPECT_EQ(run("distance --a " + g + " --b " + g + " --metric nope").status, 1);
  EXPECT_EQ(run("distance --a " + g + " --b " + g + " --delta 0.03").status, 1);
  EXPECT_EQ(run("distance --a " + g + " --b " + path("missing.wel")).status, 2);
  const auto bad = run("distance --a " + g + " --b " + path("bad.wel"), true);
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.out.find("non-positive weight"), std::string::npos);
  EXPECT_EQ(run("bench --sizes 100 --densities 0.04").status, 3);
  EXPECT_EQ(run("filter --in " + g + " --kind hard --param 1.5").status, 1);
}

TEST_F(Cli, FeaturesFilterSweepSymmetrize) {
  write("g.wel", "# nodes=4\n0 1 1\n1 2 8\n0 2 1\n2 3 0.5\n");
  const auto g = path("g.wel");
  const auto f = run("features --in " + g);
  EXPECT_EQ(f.status, 0);
  EXPECT_NE(f.out.find("node,d,c,p\n"), std::string::npos);

  ASSERT_EQ(run("filter --in " + g + " --kind hard --param 0.5 --out " + path("f.wel")).status, 0);
  EXPECT_NE(slurp(dir_ / "f.wel").find("1 2 8\n"), std::string::npos);
  EXPECT_EQ(slurp(dir_ / "f.wel").find("0 1 1\n"), std::string::npos);

  const auto s = run("sweep --in " + g + " --kind hard --grid 0.01,0.5,0.9 --metric dcp");
  EXPECT_EQ(s.status, 0);
  EXPECT_NE(s.out.find("param,removed_weight,distance,edges\n0.01,0,0,4\n"), std::string::npos) << s.out;

  write("d.wel", "# nodes=3\n0 1 2\n1 0 3\n2 1 1\n");
  const auto y = run("symmetrize --in " + path("d.wel") + " --mode sum");
  EXPECT_EQ(y.status, 0);
  EXPECT_NE(y.out.find("0 1 5\n1 2 1\n"), std::string::npos) << y.out;
}

TEST_F(Cli, ClassifyMiniPool) {
  ASSERT_EQ(run("generate --model ER_U,GEO_U --n 200 --rho 0.03 --replicas 4 --seed 3 --out-dir " +
                path("pool")).status, 0);
  const auto r = run("classify --pool " + path("pool/manifest.csv") +
                     " --metrics dcp,cglobal --workers 2 --pr-dir " + path("pr") + " --out " +
                     path("report.csv"));
  ASSERT_EQ(r.status, 0);
  const auto report = slurp(dir_ / "report.csv");
  EXPECT_NE(report.find("metric,all,same,avg"), std::string::npos);
  const auto row = report.find("\ndcp,");
  ASSERT_NE(row, std::string::npos);
  EXPECT_GT(std::stod(report.substr(row + 5)), 0.95) << report;
  EXPECT_TRUE(fs::exists(dir_ / "pr" / "dcp_all.csv"));

  const auto again = run("classify --pool " + path("pool/manifest.csv") +
                         " --metrics dcp,cglobal --workers 5 --out " + path("report2.csv"));
  ASSERT_EQ(again.status, 0);
  EXPECT_EQ(report, slurp(dir_ / "report2.csv"));
}

TEST_F(Cli, Corrnet) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::ostringstream csv;
  csv << "date,A,B,C,D\n";
  std::vector<double> price(4, 100.0);
  for (int month = 1; month <= 12; ++month)
    for (int day = 1; day <= 20; ++day) {
      char date[16];
      std::snprintf(date, sizeof date, "2010-%02d-%02d", month, day);
      csv << date;
      for (auto& p : price) {
        p *= 1.0 + noise(rng);
        csv << ',' << p;
      }
      csv << '\n';
    }
  write("prices.csv", csv.str());
  const auto r = run("corrnet --prices " + path("prices.csv") + " --window quarterly --metric sum");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("window,d_t,median_clustering\n2010Q1,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\n2010Q4,"), std::string::npos);
  EXPECT_EQ(run("corrnet --prices " + path("prices.csv") + " --window weekly").status, 1);
}
