#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace d3::cli {

enum Exit : int { ok = 0, usage = 1, precondition = 2, conflict = 3, verification = 4 };

// Everything a run needs. Addresses stay as "c.d.p" text so the JSON form is
// exactly what was typed.
struct RunConfig {
  std::string command;    // topo | route | sim | verify | embed
  std::string primitive;  // sim: broadcast | one2all | all2one | all2all | perm
  int K = 2;
  int M = 4;
  std::string root = "0.0.1";
  std::string sink = "0.0.1";
  std::string src;
  std::string dst;
  std::string style = "sv3";
  std::string mode;  // empty: the primitive's own mode
  std::string discipline = "lifo";
  std::uint64_t seed = 1;
  int count = 0;  // broadcast count, 0 = N
  bool paper_exact = false;
  bool no_delays = false;
  std::string perm_file;
  std::string format = "edges";
  bool wiring = false;
  std::string suite = "all";
  int trials = 100;
  std::vector<int> kappa;
  std::string out_dir;

  bool operator==(const RunConfig&) const = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

int cmd_topo(const RunConfig& cfg, std::ostream& out);
int cmd_route(const RunConfig& cfg, std::ostream& out);
int cmd_sim(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_embed(const RunConfig& cfg, std::ostream& out);

// Parses argv, dispatches, maps exceptions to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace d3::cli
