#include "d3/topology.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>

namespace d3 {

NetParams make_params(int K, int M) {
  if (K < 1) throw PreconditionError("K must be at least 1 (got " + std::to_string(K) + ")");
  if (M < 2) throw PreconditionError("M must be at least 2 (got " + std::to_string(M) + ")");
  NetParams net;
  net.K = K;
  net.M = M;
  net.primitives_ok = (M % 2 == 0) && M >= 4;
  return net;
}

bool valid(const NetParams& net, const RouterAddr& a) {
  return a.c >= 0 && a.c < net.K && a.d >= 0 && a.d < net.M && a.p >= 0 && a.p < net.M;
}

int index_of(const NetParams& net, const RouterAddr& a) { return (a.c * net.M + a.d) * net.M + a.p; }

RouterAddr addr_of(const NetParams& net, int index) {
  return {index / (net.M * net.M), (index / net.M) % net.M, index % net.M};
}

std::vector<RouterAddr> all_routers(const NetParams& net) {
  std::vector<RouterAddr> out;
  out.reserve(static_cast<std::size_t>(net.router_count()));
  for (int i = 0; i < net.router_count(); ++i) out.push_back(addr_of(net, i));
  return out;
}

std::string to_string(const RouterAddr& a) {
  return std::to_string(a.c) + "." + std::to_string(a.d) + "." + std::to_string(a.p);
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("malformed router address '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

RouterAddr parse_addr(std::string_view text) {
  const auto a = text.find('.');
  const auto b = a == std::string_view::npos ? a : text.find('.', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos ||
      text.find('.', b + 1) != std::string_view::npos) {
    throw std::invalid_argument("malformed router address '" + std::string(text) + "', expected c.d.p");
  }
  return {parse_int(text.substr(0, a), text), parse_int(text.substr(a + 1, b - a - 1), text),
          parse_int(text.substr(b + 1), text)};
}

RouterAddr LinkId::to(const NetParams& net) const {
  if (kind == LinkKind::local) return {c, d, q};
  return {mod(c + q, net.K), p, d};
}

LinkId LinkId::reverse(const NetParams& net) const {
  if (kind == LinkKind::local) return local(c, d, q, p);
  return global(mod(c + q, net.K), p, d, mod(-q, net.K));
}

std::string to_string(const LinkId& link) {
  std::ostringstream os;
  if (link.kind == LinkKind::local) {
    os << "l:" << link.c << '.' << link.d << '.' << link.p << '>' << link.c << '.' << link.d << '.' << link.q;
  } else {
    os << "g:" << link.c << '.' << link.d << '.' << link.p << '/' << link.q;
  }
  return os.str();
}

RouterAddr local_neighbor(const NetParams& net, const RouterAddr& addr, int port) {
  if (port < 0 || port >= net.M) {
    throw PreconditionError("local port " + std::to_string(port) + " outside 0.." + std::to_string(net.M - 1));
  }
  return {addr.c, addr.d, mod(addr.p + port, net.M)};
}

GlobalHop global_neighbor(const NetParams& net, const RouterAddr& addr, int port) {
  if (port < 0 || port >= net.K) {
    throw PreconditionError("global port " + std::to_string(port) + " outside 0.." + std::to_string(net.K - 1));
  }
  return {{mod(addr.c + port, net.K), addr.p, addr.d}, mod(-port, net.K)};
}

std::vector<LinkId> global_links(const NetParams& net) {
  std::vector<LinkId> out;
  for (const auto& r : all_routers(net)) {
    for (int g = 0; g < net.K; ++g) {
      if (g == 0 && is_swap_fixed_point(r)) continue;
      out.push_back(LinkId::global(r.c, r.d, r.p, g));
    }
  }
  return out;
}

std::vector<LinkId> all_links(const NetParams& net) {
  std::vector<LinkId> out;
  for (const auto& r : all_routers(net)) {
    for (int q = 0; q < net.M; ++q) {
      if (q != r.p) out.push_back(LinkId::local(r.c, r.d, r.p, q));
    }
  }
  const auto g = global_links(net);
  out.insert(out.end(), g.begin(), g.end());
  return out;
}

std::vector<std::vector<int>> adjacency(const NetParams& net) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(net.router_count()));
  for (const auto& l : all_links(net)) {
    adj[static_cast<std::size_t>(index_of(net, l.from()))].push_back(index_of(net, l.to(net)));
  }
  return adj;
}

std::vector<int> bfs_distances(const NetParams& net, const RouterAddr& src) {
  const auto adj = adjacency(net);
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> frontier{index_of(net, src)};
  dist[static_cast<std::size_t>(frontier.front())] = 0;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

int bfs_distance(const NetParams& net, const RouterAddr& src, const RouterAddr& dst) {
  if (!valid(net, src) || !valid(net, dst)) throw PreconditionError("router address out of range");
  return bfs_distances(net, src)[static_cast<std::size_t>(index_of(net, dst))];
}

std::vector<RibbonBundle> wiring_plan(const NetParams& net) {
  std::vector<RibbonBundle> plan;
  plan.reserve(static_cast<std::size_t>(net.K * net.M * net.K));
  for (int c = 0; c < net.K; ++c) {
    for (int d = 0; d < net.M; ++d) {
      for (int g = 0; g < net.K; ++g) {
        plan.push_back({c, d, g, mod(c + g, net.K), d, mod(-g, net.K), net.M});
      }
    }
  }
  return plan;
}

std::vector<LinkId> flatten(const RibbonBundle& bundle) {
  std::vector<LinkId> out;
  for (int p = 0; p < bundle.width; ++p) {
    // the gamma=0 connector at (c,p,p) loops back onto its own router
    if (bundle.port == 0 && p == bundle.drawer) continue;
    out.push_back(LinkId::global(bundle.cabinet, bundle.drawer, p, bundle.port));
  }
  return out;
}

std::string wiring_csv(const std::vector<RibbonBundle>& plan) {
  std::ostringstream os;
  os << "cabinet,drawer,port,target_cabinet,target_column,target_port,width\n";
  for (const auto& b : plan) {
    os << b.cabinet << ',' << b.drawer << ',' << b.port << ',' << b.target_cabinet << ',' << b.target_column << ','
       << b.target_port << ',' << b.width << '\n';
  }
  return os.str();
}

long long cut_size(const NetParams& net, const std::vector<RouterAddr>& side_a) {
  std::vector<char> inside(static_cast<std::size_t>(net.router_count()), 0);
  std::size_t members = 0;
  for (const auto& a : side_a) {
    if (!valid(net, a)) throw PreconditionError("cut side contains an out-of-range router " + to_string(a));
    auto& slot = inside[static_cast<std::size_t>(index_of(net, a))];
    if (!slot) ++members;
    slot = 1;
  }
  if (members == 0 || members == inside.size()) {
    throw PreconditionError("cut side must be a nonempty proper subset of the routers");
  }
  long long crossing = 0;
  for (const auto& l : all_links(net)) {
    if (inside[static_cast<std::size_t>(index_of(net, l.from()))] !=
        inside[static_cast<std::size_t>(index_of(net, l.to(net)))]) {
      ++crossing;
    }
  }
  return crossing;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "edges" || name == "edge-list" || name == "edge_list") return GraphFormat::edge_list;
  if (name == "dot") return GraphFormat::dot;
  throw PreconditionError("unknown graph format '" + std::string(name) + "' (expected edges or dot)");
}

namespace {

struct UndirectedEdge {
  std::string a;
  std::string b;
  std::string label;

  auto operator<=>(const UndirectedEdge&) const = default;
};

// Each undirected edge once, oriented from its smaller endpoint.
std::vector<UndirectedEdge> undirected_edges(const NetParams& net) {
  std::vector<UndirectedEdge> edges;
  for (const auto& l : all_links(net)) {
    const RouterAddr from = l.from();
    const RouterAddr to = l.to(net);
    if (!(from < to)) continue;
    std::string label = (l.kind == LinkKind::local ? "l:" + std::to_string(mod(l.q - l.p, net.M))
                                                   : "g:" + std::to_string(l.q));
    edges.push_back({to_string(from), to_string(to), std::move(label)});
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

std::string export_graph(const NetParams& net, GraphFormat format) {
  const auto edges = undirected_edges(net);
  std::ostringstream os;
  if (format == GraphFormat::edge_list) {
    os << "# D3(" << net.K << "," << net.M << ") routers=" << net.router_count() << " edges=" << edges.size() << '\n';
    for (const auto& r : all_routers(net)) {
      if (is_swap_fixed_point(r)) os << "# fixed " << to_string(r) << " g:0\n";
    }
    for (const auto& e : edges) os << e.a << ' ' << e.b << ' ' << e.label << '\n';
    return os.str();
  }
  os << "graph D3_" << net.K << "_" << net.M << " {\n";
  for (const auto& r : all_routers(net)) {
    os << "  \"" << to_string(r) << "\"";
    if (is_swap_fixed_point(r)) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (const auto& e : edges) {
    os << "  \"" << e.a << "\" -- \"" << e.b << "\" [label=\"" << e.label << "\"";
    if (e.label[0] == 'g') os << ", style=bold";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace d3
