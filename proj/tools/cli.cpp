#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "d3/embedding.hpp"
#include "d3/primitives.hpp"
#include "d3/report.hpp"
#include "d3/routing.hpp"
#include "d3/topology.hpp"
#include "d3/verify.hpp"

namespace d3::cli {

using nlohmann::json;

void to_json(json& j, const RunConfig& c) {
  j = json{{"command", c.command}, {"primitive", c.primitive}, {"K", c.K},
           {"M", c.M},             {"root", c.root},           {"sink", c.sink},
           {"src", c.src},         {"dst", c.dst},             {"style", c.style},
           {"mode", c.mode},       {"discipline", c.discipline}, {"seed", c.seed},
           {"count", c.count},     {"paper_exact", c.paper_exact}, {"no_delays", c.no_delays},
           {"perm_file", c.perm_file}, {"format", c.format},   {"wiring", c.wiring},
           {"suite", c.suite},     {"trials", c.trials},       {"kappa", c.kappa},
           {"out_dir", c.out_dir}};
}

void from_json(const json& j, RunConfig& c) {
  // missing keys keep their defaults so hand-written configs can be partial
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  take("command", c.command);
  take("primitive", c.primitive);
  take("K", c.K);
  take("M", c.M);
  take("root", c.root);
  take("sink", c.sink);
  take("src", c.src);
  take("dst", c.dst);
  take("style", c.style);
  take("mode", c.mode);
  take("discipline", c.discipline);
  take("seed", c.seed);
  take("count", c.count);
  take("paper_exact", c.paper_exact);
  take("no_delays", c.no_delays);
  take("perm_file", c.perm_file);
  take("format", c.format);
  take("wiring", c.wiring);
  take("suite", c.suite);
  take("trials", c.trials);
  take("kappa", c.kappa);
  take("out_dir", c.out_dir);
}

namespace {

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << body;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string vector_text(const SourceVectorHeader& h) {
  std::ostringstream os;
  os << '(' << (h.broadcast ? "1," : "") << h.b << ';' << h.gamma << ',' << h.pi << ',' << h.delta << ')';
  return os.str();
}

void print_path(std::ostream& out, const std::vector<Hop>& path) {
  int step = 0;
  int links = 0;
  for (const auto& hop : path) {
    ++step;
    if (hop.link()) ++links;
    out << "  step " << step << "  " << to_string(hop.from) << " -> " << to_string(hop.to) << "  " << to_string(hop)
        << '\n';
  }
  out << "hops = " << path.size() << " (links traversed = " << links << ")\n";
}

SimMode parse_mode(const std::string& s) {
  if (s == "strict") return SimMode::strict;
  if (s == "queued") return SimMode::queued;
  throw PreconditionError("unknown mode '" + s + "' (strict|queued)");
}

QueueDiscipline parse_discipline(const std::string& s) {
  if (s == "lifo") return QueueDiscipline::lifo;
  if (s == "fifo") return QueueDiscipline::fifo;
  throw PreconditionError("unknown discipline '" + s + "' (lifo|fifo)");
}

std::string plan_csv(const Schedule& s) {
  std::ostringstream os;
  os << "slot,step,kind,source,header,tag,purpose\n";
  for (std::size_t k = 0; k < s.slots.size(); ++k) {
    const auto& slot = s.slots[k];
    if (slot.kind == SlotKind::delay) {
      os << k << ',' << k + 1 << ",delay,,,,\n";
      continue;
    }
    for (const auto& l : slot.launches) {
      os << k << ',' << k + 1 << ",data," << to_string(l.source) << ",\"" << to_string(l.header) << "\"," << l.tag
         << ',' << (l.purpose == Purpose::payload ? "payload" : "request") << '\n';
    }
  }
  return os.str();
}

Plan build_plan(const RunConfig& cfg, const NetParams& net) {
  const auto& p = cfg.primitive;
  if (p == "broadcast") return schedule_broadcast(net, parse_addr(cfg.root), cfg.count);
  if (p == "one2all") return schedule_one_to_all(net, parse_addr(cfg.root), {cfg.paper_exact, !cfg.no_delays});
  if (p == "all2one") return schedule_all_to_one(net, parse_addr(cfg.sink));
  if (p == "all2all") return schedule_all_to_all(net, {!cfg.no_delays});
  if (p == "perm") {
    const auto perm =
        cfg.perm_file.empty() ? random_permutation(net, cfg.seed) : parse_permutation(net, read_file(cfg.perm_file));
    return schedule_permutation(net, perm);
  }
  throw PreconditionError("unknown primitive '" + p + "' (broadcast|one2all|all2one|all2all|perm)");
}

// "name = formula = value" lines so a mismatch with the closed form is visible
void summarize(std::ostream& out, const RunConfig& cfg, const NetParams& net, const Metrics& m) {
  const int K = net.K;
  const int M = net.M;
  const int N = net.router_count();
  const auto& p = cfg.primitive;
  out << "rounds launched = " << m.rounds_launched << ", delay rounds = " << m.delay_rounds
      << ", completion step = " << m.total_steps << ", conflicts = " << m.conflicts.size() << '\n';
  if (p == "all2all") {
    out << "rounds = KM^2 = " << K * M * M << '\n';
    if (!cfg.no_delays) out << "delays = KM = " << K * M << '\n';
    out << "deliveries = (KM^2)^2 = " << N * N << '\n';
  } else if (p == "broadcast") {
    const auto root = parse_addr(cfg.root);
    out << "rounds = N = " << cfg.count << '\n';
    if (root.d == root.p) out << "delays = N = " << cfg.count << " (d = p)\n";
    out << "deliveries = N * KM^2 = " << cfg.count * N << '\n';
  } else if (p == "one2all") {
    const auto root = parse_addr(cfg.root);
    if (cfg.paper_exact) {
      out << "rounds = KM - 1 = " << K * M - 1 << '\n';
    } else {
      out << "rounds = KM = " << K * M << '\n';
    }
    if (root.d == root.p && !cfg.no_delays) out << "delays = M = " << M << " (d = p)\n";
  } else if (p == "all2one") {
    out << "rounds = KM = " << K * M << '\n';
    out << "completion = KM + 6 = " << K * M + 6 << '\n';
    out << "payloads = KM^2 = " << N << '\n';
  } else if (p == "perm") {
    out << "completion bound = M + 4 = " << M + 4 << (m.total_steps <= M + 4 ? " (met)" : " (exceeded)") << '\n';
  }
}

std::vector<int> default_kappa(const NetParams& net) {
  std::vector<int> k;
  for (int c = 0; c < net.K; c += 2) k.push_back(c);
  return k;
}

}  // namespace

int cmd_topo(const RunConfig& cfg, std::ostream& out) {
  const auto net = make_params(cfg.K, cfg.M);
  const auto format = parse_graph_format(cfg.format);
  const std::string graph = export_graph(net, format);
  const std::string name = format == GraphFormat::dot ? "graph.dot" : "graph.edges";
  if (cfg.out_dir.empty()) {
    if (!cfg.wiring) out << graph;
  } else {
    write_file(cfg.out_dir, name, graph);
    out << "wrote " << name << ": " << net.router_count() << " routers (KM^2 = " << net.router_count() << "), "
        << all_links(net).size() / 2 << " undirected links\n";
  }
  if (cfg.wiring) {
    const std::string csv = wiring_csv(wiring_plan(net));
    if (cfg.out_dir.empty()) {
      out << csv;
    } else {
      write_file(cfg.out_dir, "wiring.csv", csv);
      out << "wrote wiring.csv\n";
    }
  }
  return ok;
}

int cmd_route(const RunConfig& cfg, std::ostream& out) {
  const auto net = make_params(cfg.K, cfg.M);
  const auto src = parse_addr(cfg.src);
  const auto dst = parse_addr(cfg.dst);
  if (!valid(net, src) || !valid(net, dst)) throw PreconditionError("route endpoints must lie in D3(K,M)");
  std::vector<Hop> path;
  if (cfg.style == "sv3") {
    const auto h = header_for(net, src, dst);
    out << "header " << vector_text(h) << '\n';
    path = path_of(net, src, h);
  } else if (cfg.style == "sv4") {
    const auto h = glgl_header_for(net, src, dst);
    out << "header " << vector_text(h) << " glgl\n";
    path = path_of(net, src, h);
  } else if (cfg.style == "dest") {
    const auto h = destination_header(src, dst);
    out << "header (" << h.b << "; " << to_string(dst) << ")\n";
    path = destination_path(net, h);
  } else if (cfg.style == "deflect") {
    std::mt19937_64 rng(cfg.seed);
    const auto choice = choose_deflection(net, RandomPolicy{cfg.seed}, src, dst, rng);
    out << "header (5; " << to_string(dst) << ") deflection D=" << choice.local_port << " C=" << choice.global_port
        << '\n';
    path = deflect_path(net, src, dst, choice, 5);
  } else {
    throw PreconditionError("unknown style '" + cfg.style + "' (sv3|sv4|dest|deflect)");
  }
  print_path(out, path);
  if (path.empty() || path.back().to != dst) {
    out << "path ends away from " << to_string(dst) << '\n';
    return verification;
  }
  if (!cfg.out_dir.empty()) write_file(cfg.out_dir, "path.json", path_json(path).dump(2) + "\n");
  return ok;
}

int cmd_sim(const RunConfig& cfg, std::ostream& out) {
  const auto net = make_params(cfg.K, cfg.M);
  RunConfig c = cfg;
  if (c.primitive == "broadcast" && c.count == 0) c.count = 10;
  const Plan plan = build_plan(c, net);
  SimConfig sc;
  sc.mode = c.mode.empty() ? plan.mode : parse_mode(c.mode);
  sc.discipline = parse_discipline(c.discipline);
  sc.seed = c.seed;
  const Metrics m = run(net, plan.schedule, sc);
  const auto check = verify_delivery(m, plan.expected);

  out << c.primitive << " on D3(" << net.K << "," << net.M << "), " << (sc.mode == SimMode::strict ? "strict" : "queued")
      << " mode\n";
  summarize(out, c, net, m);
  out << "payload deliveries = " << plan.expected.size() << " expected, " << check.missing.size() << " missing, "
      << check.unexpected.size() << " unexpected\n";
  for (std::size_t i = 0; i < m.conflicts.size() && i < 5; ++i) {
    out << "  conflict at step " << m.conflicts[i].step << " on " << to_string(m.conflicts[i].link) << '\n';
  }

  if (!c.out_dir.empty()) {
    json doc;
    doc["primitive"] = c.primitive;
    doc["K"] = net.K;
    doc["M"] = net.M;
    doc["delivery_ok"] = check.ok;
    doc["metrics"] = to_json(m);
    write_file(c.out_dir, "metrics.json", doc.dump(2) + "\n");
    write_file(c.out_dir, "links.csv", link_loads_csv(m));
    write_file(c.out_dir, "plan.csv", plan_csv(plan.schedule));
    write_file(c.out_dir, "config.json", json(c).dump(2) + "\n");
  }
  if (!check.ok) return verification;
  if (sc.mode == SimMode::strict && !m.conflicts.empty()) return conflict;
  return ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto net = make_params(cfg.K, cfg.M);
  if (net.router_count() > 2000) throw PreconditionError("verification suites are exhaustive; keep KM^2 <= 2000");
  const auto& s = cfg.suite;
  const bool all = s == "all";
  if (!all && s != "diameter" && s != "conflict" && s != "parallel" && s != "embedding" && s != "perm") {
    throw PreconditionError("unknown suite '" + s + "' (all|diameter|conflict|parallel|embedding|perm)");
  }
  json doc;
  bool pass = true;
  auto line = [&](bool good, const std::string& name, const std::string& detail) {
    out << (good ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    pass = pass && good;
  };

  if (all || s == "diameter") {
    const auto r = verify::diameter_parallel(net);
    const bool good = r.connected && r.max_distance <= 3;
    line(good, "diameter", "max distance " + std::to_string(r.max_distance) + " over " + std::to_string(r.pairs) +
                               " ordered pairs (" + std::to_string(r.pairs_at_max) + " at max)");
    doc["diameter"] = {{"max_distance", r.max_distance}, {"pairs", r.pairs}, {"pairs_at_max", r.pairs_at_max},
                       {"connected", r.connected}, {"pass", good}};
  }
  if (all || s == "conflict") {
    const auto same = verify::same_drawer_cases(net);
    const auto cross = verify::random_cross_drawer_cases(net, 10000, cfg.seed);
    const auto a = verify::conflict_sweep_parallel(net, same);
    const auto b = verify::conflict_sweep_parallel(net, cross);
    const bool good = a.disagreements == 0 && b.disagreements == 0;
    line(good, "conflict",
         std::to_string(a.cases) + " same-drawer cases + " + std::to_string(b.cases) + " random cases, " +
             std::to_string(a.disagreements + b.disagreements) + " disagreements");
    doc["conflict"] = {{"same_drawer_cases", a.cases},
                       {"random_cases", b.cases},
                       {"simulated_conflicts", a.simulated_conflicts + b.simulated_conflicts},
                       {"predicted_conflicts", a.predicted_conflicts + b.predicted_conflicts},
                       {"disagreements", a.disagreements + b.disagreements},
                       {"pass", good}};
  }
  if (all || s == "parallel") {
    const auto r = verify::parallel_paths_parallel(net);
    const bool good = r.shared_links == 0;
    line(good, "parallel", std::to_string(r.vectors) + " vectors x " + std::to_string(net.router_count()) +
                               " sources, " + std::to_string(r.shared_links) + " shared links");
    doc["parallel"] = {{"vectors", r.vectors}, {"paths", r.paths}, {"shared_links", r.shared_links}, {"pass", good}};
  }
  if (all || s == "embedding") {
    const auto kappa = cfg.kappa.empty() ? default_kappa(net) : cfg.kappa;
    const auto spec = build_embedding(net, kappa);
    const auto r = verify::check_embedding(spec);
    line(r.isomorphic, "embedding",
         std::to_string(r.logical_links) + " mapped links vs " + std::to_string(r.induced_links) +
             " induced, " + std::to_string(r.endpoint_mismatches) + " vector mismatches");
    doc["embedding"] = {{"kappa", kappa}, {"logical_links", r.logical_links}, {"induced_links", r.induced_links},
                        {"endpoint_mismatches", r.endpoint_mismatches}, {"pass", r.isomorphic}};
  }
  if ((all || s == "perm") && net.primitives_ok) {
    const auto r = verify::permutation_sweep_parallel(net, cfg.trials, cfg.seed, parse_discipline(cfg.discipline));
    const bool good = r.delivered == r.trials && r.over_bound == 0;
    line(good, "perm", std::to_string(r.delivered) + "/" + std::to_string(r.trials) +
                           " delivered, worst completion " + std::to_string(r.max_completion) +
                           " (bound M + 4 = " + std::to_string(net.M + 4) + ")");
    doc["perm"] = {{"trials", r.trials}, {"delivered", r.delivered}, {"max_completion", r.max_completion},
                   {"over_bound", r.over_bound}, {"worst_seed", r.worst_seed}, {"pass", good}};
  }
  doc["pass"] = pass;
  out << (pass ? "PASS" : "FAIL") << '\n';
  if (!cfg.out_dir.empty()) write_file(cfg.out_dir, "verify.json", doc.dump(2) + "\n");
  return pass ? ok : verification;
}

int cmd_embed(const RunConfig& cfg, std::ostream& out) {
  const auto host = make_params(cfg.K, cfg.M);
  const auto kappa = cfg.kappa.empty() ? default_kappa(host) : cfg.kappa;
  const auto spec = build_embedding(host, kappa);
  const auto check = verify::check_embedding(spec);
  const std::string tables = table_csv(spec);
  if (cfg.out_dir.empty()) {
    out << tables;
  } else {
    write_file(cfg.out_dir, "tables.csv", tables);
  }
  const auto logical = spec.logical();
  out << "D3(" << logical.K << "," << logical.M << ") inside D3(" << host.K << "," << host.M << "): "
      << (check.isomorphic ? "isomorphic" : "NOT isomorphic") << " (" << check.logical_links << " links)\n";
  if (!check.isomorphic) return verification;
  if (!logical.primitives_ok) return ok;

  const Plan plan = translate_plan(spec, schedule_all_to_all(logical));
  const Metrics m = run(host, plan.schedule);
  const auto delivered = verify_delivery(m, plan.expected);
  out << "translated all2all: rounds = KM^2 = " << m.rounds_launched << ", delays = KM = " << m.delay_rounds
      << ", conflicts = " << m.conflicts.size() << '\n';
  if (!delivered.ok) return verification;
  return m.conflicts.empty() ? ok : conflict;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  // --config is read before parsing so explicit flags override the file
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        cfg = json::parse(read_file(argv[i + 1])).get<RunConfig>();
      } catch (const std::exception& e) {
        err << "config: " << e.what() << '\n';
        return usage;
      }
    }
  }

  CLI::App app{"Swapped dragonfly D3(K,M) topology, routing and collective schedules"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file mirroring the flags");
  app.add_option("-K", cfg.K, "cabinets (global ports)");
  app.add_option("-M", cfg.M, "drawers per cabinet and routers per drawer");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--seed", cfg.seed, "RNG seed");

  auto* topo = app.add_subcommand("topo", "export the graph and wiring plan");
  topo->add_option("--format", cfg.format, "edges|dot");
  topo->add_flag("--wiring", cfg.wiring, "emit the ribbon wiring CSV");

  auto* route = app.add_subcommand("route", "show the header and hops between two routers");
  route->add_option("src", cfg.src, "c.d.p")->required();
  route->add_option("dst", cfg.dst, "c.d.p")->required();
  route->add_option("--style", cfg.style, "sv3|sv4|dest|deflect");

  auto* sim = app.add_subcommand("sim", "simulate a collective or permutation");
  sim->add_option("primitive", cfg.primitive, "broadcast|one2all|all2one|all2all|perm")->required();
  sim->add_option("--root", cfg.root, "root router c.d.p");
  sim->add_option("--sink", cfg.sink, "sink router c.d.p");
  sim->add_option("--count", cfg.count, "number of broadcasts");
  sim->add_option("--mode", cfg.mode, "strict|queued");
  sim->add_option("--discipline", cfg.discipline, "lifo|fifo");
  sim->add_option("--perm-file", cfg.perm_file, "lines 'c.d.p -> c.d.p'");
  sim->add_flag("--paper-exact", cfg.paper_exact, "one-to-all loop from i = 1");
  sim->add_flag("--no-delays", cfg.no_delays, "drop the conflict-avoiding delay slots");

  auto* ver = app.add_subcommand("verify", "run invariant suites");
  ver->add_option("--suite", cfg.suite, "all|diameter|conflict|parallel|embedding|perm");
  ver->add_option("--trials", cfg.trials, "random permutations");
  ver->add_option("--discipline", cfg.discipline, "lifo|fifo");
  ver->add_option("--kappa", cfg.kappa, "host cabinets for the embedding check")->delimiter(',');

  auto* embed = app.add_subcommand("embed", "port tables for a subnetwork on host D3(K,M)");
  embed->add_option("--kappa", cfg.kappa, "host cabinets, e.g. 1,2,5,8")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*topo) {
      cfg.command = "topo";
      return cmd_topo(cfg, out);
    }
    if (*route) {
      cfg.command = "route";
      return cmd_route(cfg, out);
    }
    if (*sim) {
      cfg.command = "sim";
      return cmd_sim(cfg, out);
    }
    if (*ver) {
      cfg.command = "verify";
      return cmd_verify(cfg, out);
    }
    cfg.command = "embed";
    return cmd_embed(cfg, out);
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return precondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
}

}  // namespace d3::cli
