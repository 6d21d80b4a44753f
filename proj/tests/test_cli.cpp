#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

std::string cli_binary() {
  if (const char* env = std::getenv("FRGAME_BIN")) return env;
#ifdef FRGAME_DEFAULT_BIN
  return FRGAME_DEFAULT_BIN;
#else
  return "frgame";
#endif
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("frgame_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

CliResult run_cli(const Workspace& ws, const std::string& args) {
  const std::string out_file = ws.path("stdout.txt");
  const std::string err_file = ws.path("stderr.txt");
  const std::string cmd = cli_binary() + " " + args + " > " + out_file + " 2> " + err_file;
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  const auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
  };
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::string slurp_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

// cells of a CSV line
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

std::vector<std::vector<std::string>> read_table(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split_csv(line));
  }
  return rows;
}

const char* kExampleGame03 =
    R"({"n_clients": 2, "costs": [0.3, 0.3], "rewards": {"kind": "symmetric", "curve": [0.5, 0.8, 0.9]}})";

}  // namespace

TEST_CASE("solve prints the example game's equilibria, optimum and gap") {
  Workspace ws;
  const std::string game = ws.file("g.json", kExampleGame03);
  const CliResult r = run_cli(ws, "solve --game " + game + " --out " + ws.path("report.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("(0.25, 0.25)") != std::string::npos);
  CHECK(r.out.find("18.3673") != std::string::npos);
  CHECK(r.out.find("reference NE: (1, 1)") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const std::string report = slurp_file(ws.path("report.json"));
  CHECK(report.find("\"optimality_gap\"") != std::string::npos);
}

TEST_CASE("solve rejects malformed and missing files with exit 2") {
  Workspace ws;
  const std::string bad = ws.file("bad.json", "this is { not json");
  CHECK(run_cli(ws, "solve --game " + bad).exit_code == 2);
  CHECK(run_cli(ws, "solve --game " + ws.path("missing.json")).exit_code == 2);
  const std::string incomplete = ws.file("inc.json", R"({"n_clients": 2})");
  CHECK(run_cli(ws, "solve --game " + incomplete).exit_code == 2);
}

TEST_CASE("solve on a 3-client fixture verifies every printed equilibrium") {
  Workspace ws;
  const std::string game = ws.file(
      "g3.json",
      R"({"n_clients": 3, "costs": [0.12, 0.12, 0.12], "rewards": {"kind": "symmetric", "curve": [0.5, 0.7, 0.85, 0.9]}})");
  const CliResult r = run_cli(ws, "solve --game " + game);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("deviation check: pass") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cost sweep matches the closed form and is byte-stable") {
  Workspace ws;
  const std::string spec = ws.file(
      "sweep.json",
      R"({"parameter": "cost", "from": 0.0, "to": 0.5, "step": 0.01, "curve": [0.5, 0.8, 0.9]})");
  const CliResult r1 = run_cli(ws, "sweep --sweep " + spec + " --out " + ws.path("a.csv"));
  CHECK(r1.exit_code == 0);
  const CliResult r2 = run_cli(ws, "sweep --sweep " + spec + " --out " + ws.path("b.csv"));
  CHECK(r2.exit_code == 0);
  CHECK(slurp_file(ws.path("a.csv")) == slurp_file(ws.path("b.csv")));

  const auto rows = read_table(ws.path("a.csv"));
  REQUIRE(rows.size() == 52);  // header + 51 rows
  CHECK(rows[0][0] == "cost");
  CHECK(rows[0][1] == "ne_p");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double c = std::stod(rows[i][0]);
    const double ne_p = std::stod(rows[i][1]);
    const double expected = std::clamp(5.0 * (c - 0.1), 0.0, 1.0);
    CHECK(std::abs(ne_p - expected) <= 1e-8);
  }
  // c = 0 row: nobody free-rides in equilibrium or at the optimum
  CHECK(std::stod(rows[1][1]) == 0.0);
  CHECK(std::stod(rows[1][2]) == 0.0);
  // diagnostics comment is appended, including the cost of maximum gap
  const std::string csv = slurp_file(ws.path("a.csv"));
  CHECK(csv.find("# max_ne_p_monotonicity_violation=") != std::string::npos);
  CHECK(csv.find("at_cost=0.3") != std::string::npos);  // the loss peaks at c = 0.3
}

TEST_CASE("sweep flags failed rows and continues") {
  Workspace ws;
  // an all-zero curve makes the optimal total 0, so the gap is undefined
  const std::string spec = ws.file(
      "zero.json",
      R"({"parameter": "cost", "from": 0.1, "to": 0.2, "step": 0.1, "curve": [0.0, 0.0, 0.0]})");
  const CliResult r = run_cli(ws, "sweep --sweep " + spec + " --out " + ws.path("z.csv"));
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("failed") != std::string::npos);
  const auto rows = read_table(ws.path("z.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][1] == "nan");
  CHECK(rows[2][1] == "nan");
}

TEST_CASE("client-count sweep keeps per-client NE utility constant at interior points") {
  Workspace ws;
  const std::string spec = ws.file(
      "sweep_n.json",
      R"({"parameter": "n_clients", "values": [2,3,4,5,6,7,8,9,10,12,14,16,18,20], "cost": 0.15,
          "curve_family": {"a0": 0.5, "amax": 0.95, "gamma": 0.6}})");
  const CliResult r = run_cli(ws, "sweep --sweep " + spec + " --out " + ws.path("n.csv"));
  CHECK(r.exit_code == 0);
  const auto rows = read_table(ws.path("n.csv"));
  REQUIRE(rows.size() == 15);
  double reference = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ne_p = std::stod(rows[i][1]);
    if (ne_p <= 1e-9 || ne_p >= 1.0 - 1e-9) continue;  // interior mixed only
    const double per_client = std::stod(rows[i][5]);
    if (reference < 0.0) reference = per_client;
    CHECK(std::abs(per_client - reference) <= 1e-6);
  }
  CHECK(reference > 0.0);
  // refusing to invent rewards: no curve_family and no accuracy_files -> parse error
  const std::string bad = ws.file(
      "sweep_bad.json", R"({"parameter": "n_clients", "values": [2,3], "cost": 0.15})");
  CHECK(run_cli(ws, "sweep --sweep " + bad + " --out " + ws.path("x.csv")).exit_code == 2);
}

TEST_CASE("fictitious play trajectories") {
  Workspace ws;
  const std::string game02 = ws.file(
      "g02.json",
      R"({"n_clients": 2, "costs": [0.2, 0.2], "rewards": {"kind": "symmetric", "curve": [0.5, 0.8, 0.9]}})");
  const CliResult r = run_cli(ws, "fictitious --game " + game02 + " --rounds 10000 --seed 0 --out " +
                                      ws.path("traj.csv"));
  CHECK(r.exit_code == 0);
  const auto rows = read_table(ws.path("traj.csv"));
  REQUIRE(rows.size() >= 2);
  const auto& last = rows.back();
  CHECK(std::abs(std::stod(last[1]) - 0.5) <= 0.02);
  CHECK(std::abs(std::stod(last[2]) - 0.5) <= 0.02);

  // rounds = 1: exactly header + one row
  const CliResult one = run_cli(ws, "fictitious --game " + game02 + " --rounds 1 --out " +
                                        ws.path("one.csv"));
  CHECK(one.exit_code == 0);
  std::istringstream lines(slurp_file(ws.path("one.csv")));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 2);

  // dominant free-riding converges fast
  const std::string game04 = ws.file(
      "g04.json",
      R"({"n_clients": 2, "costs": [0.4, 0.4], "rewards": {"kind": "symmetric", "curve": [0.5, 0.8, 0.9]}})");
  const CliResult fast = run_cli(ws, "fictitious --game " + game04 + " --rounds 200 --out " +
                                         ws.path("fast.csv"));
  CHECK(fast.exit_code == 0);
  const auto frows = read_table(ws.path("fast.csv"));
  CHECK(std::stod(frows.back()[1]) >= 0.98);
  CHECK(std::stod(frows.back()[2]) >= 0.98);
}

TEST_CASE("reward-table: parametric tables feed solve and are reproducible") {
  Workspace ws;
  const CliResult r1 =
      run_cli(ws, "reward-table --parametric 0.5,0.8,0.9 --out " + ws.path("t1.json"));
  CHECK(r1.exit_code == 0);
  const CliResult r2 =
      run_cli(ws, "reward-table --parametric 0.5,0.8,0.9 --out " + ws.path("t2.json"));
  CHECK(r2.exit_code == 0);
  CHECK(slurp_file(ws.path("t1.json")) == slurp_file(ws.path("t2.json")));

  // the table file is loadable by solve with --cost, reproducing the example game
  const CliResult solve = run_cli(ws, "solve --game " + ws.path("t1.json") + " --cost 0.3");
  CHECK(solve.exit_code == 0);
  CHECK(solve.out.find("18.3673") != std::string::npos);

  // and through a game file that references the table
  const std::string wrapped = ws.file(
      "wrapped.json",
      R"({"n_clients": 2, "costs": [0.3, 0.3], "rewards": {"kind": "table_file", "path": "t1.json"}})");
  const CliResult solve2 = run_cli(ws, "solve --game " + wrapped);
  CHECK(solve2.exit_code == 0);
  CHECK(solve2.out.find("18.3673") != std::string::npos);

  // missing --cost for a bare table
  CHECK(run_cli(ws, "solve --game " + ws.path("t1.json")).exit_code == 2);
}

TEST_CASE("reward-table: small FL build has a fair-coin baseline") {
  Workspace ws;
  // full-size client datasets (the pooled test split must be large enough for
  // the fair-coin bound) but only one round: A(0) never trains anyway
  const std::string cfg = ws.file(
      "fl.json",
      R"({"n_clients": 2, "rounds": 1, "samples_per_client": 1000, "seeds": [0,1,2,3,4]})");
  const CliResult r = run_cli(ws, "reward-table --fl-config " + cfg + " --out " + ws.path("fl_t.json"));
  CHECK(r.exit_code == 0);
  const std::string table = slurp_file(ws.path("fl_t.json"));
  // parse A(0) out of the saved table
  const auto rows_pos = table.find("\"rows\"");
  REQUIRE(rows_pos != std::string::npos);
  const auto mean_pos = table.find("\"mean\"", rows_pos);
  REQUIRE(mean_pos != std::string::npos);
  const double a0 = std::stod(table.substr(table.find(':', mean_pos) + 1));
  CHECK(a0 >= 0.45);
  CHECK(a0 <= 0.55);
}

TEST_CASE("reward-table: resource caps exit with code 4") {
  Workspace ws;
  const std::string cfg = ws.file(
      "fl_big.json", R"({"n_clients": 9, "mode": "by_subset", "rounds": 2, "seeds": [0]})");
  const CliResult r = run_cli(ws, "reward-table --fl-config " + cfg + " --out " + ws.path("x.json"));
  CHECK(r.exit_code == 4);
  CHECK(r.err.find("resource cap") != std::string::npos);
}
