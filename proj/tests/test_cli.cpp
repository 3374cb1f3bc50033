#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const char* kCli = COMMNET_CLI_PATH;

int run(const std::string& args) {
  const std::string cmd = std::string(kCli) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  TempDir() {
    path = fs::temp_directory_path() / ("commnet_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
  static inline int counter = 0;
};

size_t count_occurrences(const std::string& text, const std::string& needle) {
  size_t n = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("generate writes network, dot and manifest") {
  TempDir dir;
  const int rc = run("generate --spec generic --devices 6 --seed 7977 --out " + dir.path.string());
  CHECK(rc == 0);
  CHECK(fs::exists(dir.path / "network.json"));
  CHECK(fs::exists(dir.path / "network.dot"));
  CHECK(fs::exists(dir.path / "manifest.json"));

  const std::string net = slurp(dir.path / "network.json");
  CHECK(count_occurrences(net, "\"class\": \"device\"") == 6);
  CHECK(net.find("\"seed\": 7977") != std::string::npos);
}

TEST_CASE("generate is reproducible across runs and from its manifest") {
  TempDir a, b, c;
  REQUIRE(run("generate --spec generic --devices 20 --seed 3 --children 3 --out " +
              a.path.string()) == 0);
  REQUIRE(run("generate --spec generic --devices 20 --seed 3 --children 3 --out " +
              b.path.string()) == 0);
  CHECK(slurp(a.path / "network.json") == slurp(b.path / "network.json"));

  REQUIRE(run("generate --from-manifest " + (a.path / "manifest.json").string() + " --out " +
              c.path.string()) == 0);
  CHECK(slurp(a.path / "network.json") == slurp(c.path / "network.json"));
}

TEST_CASE("generate with a missing spec file exits 2 and writes nothing") {
  TempDir dir;
  const int rc = run("generate --spec /nonexistent/spec.json --devices 5 --out " +
                     dir.path.string() + "/new_dir");
  CHECK(rc == 2);
  CHECK(!fs::exists(dir.path / "new_dir" / "network.json"));
  CHECK(!fs::exists(dir.path / "new_dir" / "manifest.json"));
}

TEST_CASE("generate without --devices and without --grid exits 2") {
  TempDir dir;
  CHECK(run("generate --spec generic --out " + dir.path.string()) == 2);
}

TEST_CASE("attack produces a deterministic distribution") {
  TempDir dir;
  REQUIRE(run("generate --spec generic --devices 10 --seed 1 --out " + dir.path.string()) == 0);
  const std::string net = (dir.path / "network.json").string();

  TempDir out1, out2;
  REQUIRE(run("attack --network " + net + " --spec generic --entry 0 --trials 50 --seed 9 --out " +
              out1.path.string()) == 0);
  REQUIRE(run("attack --network " + net + " --spec generic --entry 0 --trials 50 --seed 9 --out " +
              out2.path.string()) == 0);
  CHECK(slurp(out1.path / "distribution.csv") == slurp(out2.path / "distribution.csv"));
  CHECK(fs::exists(out1.path / "summary.json"));
  CHECK(fs::exists(out1.path / "manifest.json"));

  const std::string summary = slurp(out1.path / "summary.json");
  CHECK(summary.find("\"n_trials\": 50") != std::string::npos);
}

TEST_CASE("attack --entry with one trial yields a one-trial distribution") {
  TempDir dir;
  REQUIRE(run("generate --spec generic --devices 5 --seed 2 --out " + dir.path.string()) == 0);
  TempDir out;
  REQUIRE(run("attack --network " + (dir.path / "network.json").string() +
              " --spec generic --entry 0 --trials 1 --out " + out.path.string()) == 0);
  CHECK(slurp(out.path / "summary.json").find("\"n_trials\": 1") != std::string::npos);
}

TEST_CASE("sweep over a singleton axis writes one distribution plus the summary") {
  TempDir gen, out;
  REQUIRE(run("sweep --spec generic --devices 8 --seed 4 --sibling-axis all --trials 20 "
              "--sweep-devices --out " +
              out.path.string()) == 0);
  CHECK(fs::exists(out.path / "distribution_sibling_all.csv"));
  const std::string summary = slurp(out.path / "sweep_summary.csv");
  CHECK(summary.find("axis_value") != std::string::npos);
  CHECK(count_occurrences(summary, "\n") == 2);  // header + one data row
}

TEST_CASE("attack --sweep-devices multiplies trials by the device count") {
  TempDir gen, out;
  REQUIRE(run("generate --spec generic --devices 10 --seed 6 --out " + gen.path.string()) == 0);
  REQUIRE(run("attack --network " + (gen.path / "network.json").string() +
              " --spec generic --sweep-devices --trials 100 --out " + out.path.string()) == 0);
  CHECK(slurp(out.path / "summary.json").find("\"n_trials\": 1000") != std::string::npos);
}

TEST_CASE("attack is schedule-independent under --jobs") {
  TempDir gen, seq, par;
  REQUIRE(run("generate --spec generic --devices 12 --seed 5 --out " + gen.path.string()) == 0);
  const std::string net = (gen.path / "network.json").string();
  REQUIRE(run("attack --network " + net +
              " --spec generic --sweep-devices --trials 40 --seed 2 --jobs 1 --out " +
              seq.path.string()) == 0);
  REQUIRE(run("attack --network " + net +
              " --spec generic --sweep-devices --trials 40 --seed 2 --jobs 3 --out " +
              par.path.string()) == 0);
  CHECK(slurp(seq.path / "distribution.csv") == slurp(par.path / "distribution.csv"));
}

TEST_CASE("a singleton sweep equals the equivalent attack run") {
  TempDir gen, attack_out, sweep_out;
  const std::string gen_flags = "--spec generic --devices 9 --seed 12";
  REQUIRE(run("generate " + gen_flags + " --out " + gen.path.string()) == 0);
  REQUIRE(run("attack --network " + (gen.path / "network.json").string() +
              " --spec generic --sweep-devices --trials 30 --seed 7 --out " +
              attack_out.path.string()) == 0);
  // same generation inputs, same campaign seed, axis pinned to the default mode
  REQUIRE(run("sweep " + gen_flags +
              " --sibling-axis all --sweep-devices --trials 30 --attack-seed 7 --out " +
              sweep_out.path.string()) == 0);
  CHECK(slurp(attack_out.path / "distribution.csv") ==
        slurp(sweep_out.path / "distribution_sibling_all.csv"));
}

TEST_CASE("sweep over a children axis orders the means") {
  TempDir out;
  REQUIRE(run("sweep --spec generic --devices 24 --seed 3 --children-axis 2,24 "
              "--sweep-devices --trials 60 --attack-seed 1 --out " +
              out.path.string()) == 0);
  CHECK(fs::exists(out.path / "distribution_children_2.csv"));
  CHECK(fs::exists(out.path / "distribution_children_24.csv"));

  // parse the means back out of the combined summary
  std::istringstream in(slurp(out.path / "sweep_summary.csv"));
  std::string line;
  std::getline(in, line);  // header
  std::map<std::string, double> means;
  while (std::getline(in, line)) {
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 + 1);
    const size_t c3 = line.find(',', c2 + 1);
    means[line.substr(0, c1)] = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
  }
  REQUIRE(means.size() == 2);
  CHECK(means["children_2"] < means["children_24"]);
}

TEST_CASE("scada generations over the same grid share a topology across seeds") {
  TempDir a, b;
  const std::string grid = std::string(COMMNET_DATA_DIR) + "/grids/cigre_mv_like.json";
  REQUIRE(run("generate --spec scada --grid " + grid + " --seed 1 --entrypoints 0 --out " +
              a.path.string()) == 0);
  REQUIRE(run("generate --spec scada --grid " + grid + " --seed 2 --entrypoints 0 --out " +
              b.path.string()) == 0);
  // identical except for the echoed seed in meta
  std::string na = slurp(a.path / "network.json");
  std::string nb = slurp(b.path / "network.json");
  const size_t nodes_a = na.find("\"nodes\"");
  const size_t nodes_b = nb.find("\"nodes\"");
  REQUIRE(nodes_a != std::string::npos);
  CHECK(na.substr(nodes_a) == nb.substr(nodes_b));
}

TEST_CASE("COMMNET_OUT provides the default output directory") {
  TempDir dir;
  const std::string cmd = "COMMNET_OUT=" + dir.path.string() + " " + std::string(kCli) +
                          " generate --spec generic --devices 3 --seed 1 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(dir.path / "network.json"));
}

TEST_CASE("sweep requires exactly one axis") {
  TempDir out;
  CHECK(run("sweep --spec generic --devices 8 --trials 5 --out " + out.path.string()) == 2);
  CHECK(run("sweep --spec generic --devices 8 --trials 5 --children-axis 2,4 "
            "--sibling-axis none,all --out " +
            out.path.string()) == 2);
}

TEST_CASE("bench with a single size skips the fit") {
  TempDir out;
  REQUIRE(run("bench --sizes 2000 --reps 1 --out " + out.path.string()) == 0);
  const std::string csv = slurp(out.path / "bench.csv");
  CHECK(csv.find("case,n_devices,mean_seconds") != std::string::npos);
  CHECK(count_occurrences(csv, "2000") == 3);  // best, average, worst
  const std::string fits = slurp(out.path / "bench_summary.json");
  CHECK(fits.find("slope") == std::string::npos);  // no fit from one point
}

TEST_CASE("validate: builtin spec text, broken network, missing path") {
  TempDir dir;

  // a spec file on disk validates clean
  REQUIRE(run("generate --spec scada --grid " + std::string(COMMNET_DATA_DIR) +
              "/grids/cigre_mv_like.json --out " + dir.path.string()) == 0);
  CHECK(run("validate " + std::string(COMMNET_DATA_DIR) + "/specs/generic.json") == 0);
  CHECK(run("validate " + (dir.path / "network.json").string()) == 0);

  // two roots
  const fs::path broken = dir.path / "broken.json";
  std::ofstream(broken) << R"({
    "format_version": 1,
    "meta": { "spec_name": "x", "grid_name": null, "seed": 0,
      "hyperparams": { "n_devices": 1, "sibling_mode": "none", "flat": false,
                       "children_per_parent": 2, "children_deviation": 0, "n_entrypoints": 0 } },
    "nodes": [
      { "id": 0, "class": "device", "category": "d", "level": 0, "entrypoint": false },
      { "id": 1, "class": "root", "category": "r", "level": 1, "entrypoint": false },
      { "id": 2, "class": "root", "category": "r", "level": 2, "entrypoint": false }
    ],
    "links": [
      { "a": 0, "b": 1, "kind": "hierarchy" },
      { "a": 1, "b": 2, "kind": "hierarchy" }
    ]
  })";
  CHECK(run("validate " + broken.string()) == 1);

  CHECK(run("validate /no/such/file.json") == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("attack --network missing.json") == 2);  // --spec required
  CHECK(run("frobnicate") == 2);
}
