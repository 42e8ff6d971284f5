#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using d3::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "d3net");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("d3net_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("topo exports") {
  auto r = cli({"-K", "1", "-M", "2", "topo", "--format", "edges"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "routers=4"));

  const auto dir = scratch("topo");
  r = cli({"-K", "3", "-M", "4", "--out", dir.string(), "topo", "--format", "dot", "--wiring"});
  CHECK(r.code == 0);
  const auto dot = slurp(dir / "graph.dot");
  CHECK(has(dot, "graph D3_3_4 {"));
  CHECK(has(dot, "\"2.3.3\""));
  CHECK(fs::exists(dir / "wiring.csv"));

  r = cli({"-K", "6", "-M", "6", "topo", "--wiring"});
  CHECK(has(r.out, "\n4,5,4,2,5,2,6\n"));
}

TEST_CASE("route styles") {
  auto r = cli({"-K", "2", "-M", "4", "route", "0.0.0", "1.2.3", "--style", "sv3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "header (3;1,3,2)"));
  CHECK(has(r.out, "hops = 3"));

  r = cli({"-K", "2", "-M", "4", "route", "0.1.2", "0.1.2"});
  CHECK(has(r.out, "header (3;0,1,3)"));
  CHECK(has(r.out, "hops = 3"));

  r = cli({"-K", "2", "-M", "4", "--seed", "7", "route", "0.0.1", "1.2.3", "--style", "deflect"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "hops = 5"));

  r = cli({"-K", "2", "-M", "4", "route", "0.0.1", "1.2.3", "--style", "sv4"});
  CHECK(has(r.out, "hops = 4"));

  r = cli({"-K", "2", "-M", "4", "route", "0.0.1", "1.2.3", "--style", "zigzag"});
  CHECK(r.code == 2);
  r = cli({"-K", "2", "-M", "4", "route", "0.0.1", "1.9.3"});
  CHECK(r.code == 2);
}

TEST_CASE("sim all2all summary and files") {
  const auto dir = scratch("a2a");
  const auto r = cli({"-K", "2", "-M", "4", "--out", dir.string(), "sim", "all2all", "--mode", "strict"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "rounds = KM^2 = 32"));
  CHECK(has(r.out, "delays = KM = 8"));
  CHECK(has(r.out, "deliveries = (KM^2)^2 = 1024"));
  CHECK(has(r.out, "conflicts = 0"));
  const auto doc = nlohmann::json::parse(slurp(dir / "metrics.json"));
  CHECK(doc["metrics"]["rounds_launched"] == 32);
  CHECK(doc["metrics"]["delay_rounds"] == 8);
  CHECK(doc["metrics"]["deliveries"].size() == 1024);
  CHECK(doc["delivery_ok"] == true);
  CHECK(slurp(dir / "links.csv").rfind("step,link,load\n", 0) == 0);
  CHECK(slurp(dir / "plan.csv").rfind("slot,step,kind,source,header,tag,purpose\n", 0) == 0);
}

TEST_CASE("sim exit codes") {
  auto r = cli({"-K", "2", "-M", "4", "sim", "all2all", "--no-delays"});
  CHECK(r.code == 3);
  r = cli({"sim", "all2one", "--sink", "0.1.1"});
  CHECK(r.code == 2);
  CHECK(has(r.err, "if d != p"));
  r = cli({"-K", "2", "-M", "3", "sim", "all2all"});
  CHECK(r.code == 2);
  r = cli({"sim", "gossip"});
  CHECK(r.code == 2);
  r = cli({"sim"});
  CHECK(r.code == 1);
}

TEST_CASE("sim all2one completes at KM + 6") {
  const auto r = cli({"-K", "2", "-M", "4", "sim", "all2one", "--sink", "0.0.1"});
  CHECK(has(r.out, "completion step = 14"));
  CHECK(has(r.out, "completion = KM + 6 = 14"));
}

TEST_CASE("sim perm from a file") {
  const auto dir = scratch("perm");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "p.txt");
    f << "0.0.0 -> 0.0.1\n0.0.1 -> 0.0.0\n0.1.0 -> 0.1.0\n0.1.1 -> 0.1.1\n";
  }
  // M = 2 cannot run the collective schedules
  auto r = cli({"-K", "1", "-M", "2", "sim", "perm", "--perm-file", (dir / "p.txt").string()});
  CHECK(r.code == 2);
  r = cli({"-K", "2", "-M", "4", "--seed", "3", "sim", "perm"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "(met)"));
}

TEST_CASE("verify suites") {
  auto r = cli({"-K", "2", "-M", "4", "verify", "--suite", "all"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "PASS diameter"));
  CHECK(has(r.out, "PASS conflict: 47616 same-drawer cases"));
  CHECK(has(r.out, "PASS parallel"));
  CHECK(has(r.out, "PASS embedding"));
  CHECK(has(r.out, "PASS perm"));
  r = cli({"-K", "3", "-M", "4", "verify", "--suite", "diameter"});
  CHECK(has(r.out, "max distance 3"));
  r = cli({"verify", "--suite", "nope"});
  CHECK(r.code == 2);
}

TEST_CASE("embed tables") {
  const auto r = cli({"-K", "9", "-M", "4", "embed", "--kappa", "1,2,5,8"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "global,1,2,\"{8,0,3,6}\""));
  CHECK(has(r.out, "isomorphic"));
  CHECK(has(r.out, "rounds = KM^2 = 64, delays = KM = 16, conflicts = 0"));
}

TEST_CASE("config json round trip and override") {
  d3::cli::RunConfig c;
  c.command = "sim";
  c.primitive = "broadcast";
  c.K = 3;
  c.root = "1.0.1";
  c.seed = 99;
  c.kappa = {0, 2};
  c.paper_exact = true;
  const nlohmann::json j = c;
  CHECK(j.get<d3::cli::RunConfig>() == c);

  const auto dir = scratch("cfg");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.json");
    f << R"({"K": 2, "M": 4, "root": "0.1.1", "count": 4})";
  }
  auto r = cli({"--config", (dir / "run.json").string(), "--out", (dir / "o").string(), "sim", "broadcast"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "delays = N = 4"));
  const auto saved = nlohmann::json::parse(slurp(dir / "o" / "config.json")).get<d3::cli::RunConfig>();
  CHECK(saved.root == "0.1.1");
  CHECK(saved.count == 4);
  // flags win over the file
  r = cli({"--config", (dir / "run.json").string(), "sim", "broadcast", "--root", "0.0.1"});
  CHECK_FALSE(has(r.out, "delays = N"));
  r = cli({"--config", (dir / "missing.json").string(), "sim", "broadcast"});
  CHECK(r.code == 1);
}

TEST_CASE("seeded runs write identical metrics") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    const auto r = cli({"-K", "2", "-M", "6", "--seed", "17", "--out", dir.string(), "sim", "perm"});
    CHECK(r.code == 0);
  }
  CHECK(slurp(a / "metrics.json") == slurp(b / "metrics.json"));
  CHECK(slurp(a / "links.csv") == slurp(b / "links.csv"));
}
