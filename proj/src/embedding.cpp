#include "d3/embedding.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace d3 {

namespace {

std::vector<int> iota_vec(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void check_subset(std::vector<int>& s, int bound, const char* what) {
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= bound) {
      throw PreconditionError(std::string(what) + " entry " + std::to_string(s[i]) + " outside 0.." +
                              std::to_string(bound - 1));
    }
    if (i > 0 && s[i] == s[i - 1]) {
      throw PreconditionError(std::string(what) + " entry " + std::to_string(s[i]) + " repeated");
    }
  }
}

std::vector<std::vector<int>> difference_table(const std::vector<int>& s, int modulus) {
  std::vector<std::vector<int>> t(s.size(), std::vector<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) t[i][j] = mod(s[j] - s[i], modulus);
  return t;
}

}  // namespace

NetParams EmbeddingSpec::logical() const {
  return make_params(static_cast<int>(kappa.size()), static_cast<int>(lambda.size()));
}

EmbeddingSpec build_embedding(const NetParams& host, std::vector<int> kappa, std::vector<int> lambda) {
  check_subset(kappa, host.K, "cabinet subset");
  check_subset(lambda, host.M, "local subset");
  if (kappa.empty()) throw PreconditionError("cabinet subset is empty");
  if (lambda.size() < 2) throw PreconditionError("local subset needs at least two indices");
  EmbeddingSpec spec;
  spec.host = host;
  spec.global_ports = difference_table(kappa, host.K);
  spec.local_ports = difference_table(lambda, host.M);
  spec.kappa = std::move(kappa);
  spec.lambda = std::move(lambda);
  return spec;
}

EmbeddingSpec build_embedding(const NetParams& host, std::vector<int> kappa) {
  return build_embedding(host, std::move(kappa), iota_vec(host.M));
}

RouterAddr translate_addr(const EmbeddingSpec& spec, const RouterAddr& logical) {
  if (!valid(spec.logical(), logical)) {
    throw PreconditionError("logical router " + to_string(logical) + " outside the embedded network");
  }
  return {spec.kappa[static_cast<std::size_t>(logical.c)], spec.lambda[static_cast<std::size_t>(logical.d)],
          spec.lambda[static_cast<std::size_t>(logical.p)]};
}

SourceVectorHeader translate_vector(const EmbeddingSpec& spec, const RouterAddr& logical_src,
                                    const SourceVectorHeader& v) {
  const NetParams net = spec.logical();
  if (!valid(net, logical_src)) throw PreconditionError("logical source outside the embedded network");
  if (v.broadcast || v.four_hop || v.gamma < 0 || v.gamma >= net.K || v.pi < 0 || v.pi >= net.M || v.delta < 0 ||
      v.delta >= net.M) {
    throw PreconditionError("logical vector out of range");
  }
  const auto K = static_cast<std::size_t>(net.K);
  const auto L = static_cast<std::size_t>(net.M);
  const auto c = static_cast<std::size_t>(logical_src.c);
  const auto d = static_cast<std::size_t>(logical_src.d);
  const auto p = static_cast<std::size_t>(logical_src.p);
  SourceVectorHeader out = v;
  out.delta = spec.local_ports[p][(p + static_cast<std::size_t>(v.delta)) % L];
  out.gamma = spec.global_ports[c][(c + static_cast<std::size_t>(v.gamma)) % K];
  out.pi = spec.local_ports[d][(d + static_cast<std::size_t>(v.pi)) % L];
  return out;
}

std::vector<LinkId> embedded_links(const EmbeddingSpec& spec) {
  const NetParams net = spec.logical();
  std::vector<LinkId> out;
  for (const auto& l : all_links(net)) {
    const RouterAddr from = translate_addr(spec, l.from());
    const RouterAddr to = translate_addr(spec, l.to(net));
    if (l.kind == LinkKind::local) {
      out.push_back(LinkId::local(from.c, from.d, from.p, to.p));
    } else {
      out.push_back(LinkId::global(from.c, from.d, from.p, mod(to.c - from.c, spec.host.K)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinkId> embedded_global_links(const EmbeddingSpec& spec) {
  auto all = embedded_links(spec);
  std::erase_if(all, [](const LinkId& l) { return l.kind != LinkKind::global; });
  return all;
}

std::vector<RibbonBundle> embedded_wiring_plan(const EmbeddingSpec& spec) {
  std::vector<RibbonBundle> plan;
  const auto N = spec.host.K;
  for (std::size_t i = 0; i < spec.kappa.size(); ++i) {
    for (int d = 0; d < spec.host.M; ++d) {
      for (std::size_t j = 0; j < spec.kappa.size(); ++j) {
        const int port = spec.global_ports[i][j];
        plan.push_back({spec.kappa[i], d, port, mod(spec.kappa[i] + port, N), d, mod(-port, N), spec.host.M});
      }
    }
  }
  std::sort(plan.begin(), plan.end());
  return plan;
}

std::vector<EmbeddingSpec> partition_subnetworks(const NetParams& host, const std::vector<std::vector<int>>& parts) {
  std::vector<int> owner(static_cast<std::size_t>(host.K), -1);
  std::vector<EmbeddingSpec> out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (int c : parts[k]) {
      if (c < 0 || c >= host.K) throw PreconditionError("partition cabinet " + std::to_string(c) + " out of range");
      if (owner[static_cast<std::size_t>(c)] >= 0 && owner[static_cast<std::size_t>(c)] != static_cast<int>(k)) {
        throw PreconditionError("partition parts overlap at cabinet " + std::to_string(c));
      }
      owner[static_cast<std::size_t>(c)] = static_cast<int>(k);
    }
    out.push_back(build_embedding(host, parts[k]));
  }
  return out;
}

MaintenanceView maintenance_view(const NetParams& host, const Removal& removed) {
  if (const auto* r = std::get_if<RemoveDrawerIndex>(&removed)) {
    if (r->index < 0 || r->index >= host.M) throw PreconditionError("drawer index out of range");
    if (host.M - 1 < 2) throw PreconditionError("removing a drawer index would leave fewer than two routers per drawer");
    auto lambda = iota_vec(host.M);
    lambda.erase(lambda.begin() + r->index);
    return {build_embedding(host, iota_vec(host.K), std::move(lambda)), host.K * (2 * host.M - 1)};
  }
  const auto& r = std::get<RemoveCabinet>(removed);
  if (r.cabinet < 0 || r.cabinet >= host.K) throw PreconditionError("cabinet out of range");
  if (host.K - 1 < 1) throw PreconditionError("removing the only cabinet leaves no network");
  auto kappa = iota_vec(host.K);
  kappa.erase(kappa.begin() + r.cabinet);
  return {build_embedding(host, std::move(kappa)), host.M * host.M};
}

Plan translate_plan(const EmbeddingSpec& spec, const Plan& logical) {
  if (logical.schedule.on_delivery) throw PreconditionError("reactive schedules cannot be translated");
  Plan out;
  out.mode = logical.mode;
  out.schedule.name = logical.schedule.name + "@host";
  out.schedule.reply_gap = logical.schedule.reply_gap;
  for (const auto& slot : logical.schedule.slots) {
    Slot s{slot.kind, {}};
    for (const auto& l : slot.launches) {
      const auto* sv = std::get_if<SourceVectorHeader>(&l.header);
      if (sv == nullptr || sv->broadcast) throw PreconditionError("only unicast source-vector launches translate");
      s.launches.push_back({translate_addr(spec, l.source), translate_vector(spec, l.source, *sv), l.tag, l.purpose});
    }
    out.schedule.slots.push_back(std::move(s));
  }
  for (const auto& e : logical.expected) {
    out.expected.push_back({translate_addr(spec, e.src), translate_addr(spec, e.dst), e.tag});
  }
  return out;
}

namespace {

void write_rows(std::ostringstream& os, const char* table, const std::vector<int>& keys,
                const std::vector<std::vector<int>>& rows) {
  for (std::size_t i = 0; i < keys.size(); ++i) {
    os << table << ',' << i << ',' << keys[i] << ",\"{";
    for (std::size_t j = 0; j < rows[i].size(); ++j) os << (j ? "," : "") << rows[i][j];
    os << "}\"\n";
  }
}

}  // namespace

std::string table_csv(const EmbeddingSpec& spec) {
  std::ostringstream os;
  os << "# host " << spec.host.K << ',' << spec.host.M << '\n';
  os << "table,i,k_i,ports\n";
  write_rows(os, "global", spec.kappa, spec.global_ports);
  write_rows(os, "local", spec.lambda, spec.local_ports);
  return os.str();
}

EmbeddingSpec parse_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int N = 0;
  int M = 0;
  struct Row {
    std::string table;
    int i;
    int key;
    std::vector<int> ports;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "table,i,k_i,ports") continue;
    if (line.rfind("# host ", 0) == 0) {
      if (std::sscanf(line.c_str(), "# host %d,%d", &N, &M) != 2) throw std::invalid_argument("bad host line");
      continue;
    }
    const auto open = line.find("\"{");
    const auto close = line.find("}\"");
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw std::invalid_argument("malformed table row '" + line + "'");
    }
    Row r;
    std::istringstream head(line.substr(0, open));
    std::string field;
    std::getline(head, r.table, ',');
    std::getline(head, field, ',');
    r.i = std::stoi(field);
    std::getline(head, field, ',');
    r.key = std::stoi(field);
    std::istringstream ports(line.substr(open + 2, close - open - 2));
    while (std::getline(ports, field, ',')) r.ports.push_back(std::stoi(field));
    rows.push_back(std::move(r));
  }
  if (N < 1 || M < 2) throw std::invalid_argument("table is missing its '# host N,M' line");
  std::vector<int> kappa;
  std::vector<int> lambda;
  for (const auto& r : rows) (r.table == "global" ? kappa : lambda).push_back(r.key);
  auto spec = build_embedding(make_params(N, M), kappa, lambda);
  for (const auto& r : rows) {
    const auto& table = r.table == "global" ? spec.global_ports : spec.local_ports;
    const auto& keys = r.table == "global" ? spec.kappa : spec.lambda;
    if (r.i < 0 || r.i >= static_cast<int>(keys.size()) || keys[static_cast<std::size_t>(r.i)] != r.key ||
        table[static_cast<std::size_t>(r.i)] != r.ports) {
      throw std::invalid_argument("table row " + r.table + " " + std::to_string(r.i) +
                                  " does not match k_j - k_i for its subset");
    }
  }
  return spec;
}

}  // namespace d3
