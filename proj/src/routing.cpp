#include "d3/routing.hpp"

#include <charconv>
#include <sstream>

#include "d3/rng.hpp"

namespace d3 {

int counter(const Header& h) {
  return std::visit([](const auto& x) { return x.b; }, h);
}

bool is_broadcast(const Header& h) {
  const auto* sv = std::get_if<SourceVectorHeader>(&h);
  return sv != nullptr && sv->broadcast;
}

std::optional<LinkId> Hop::link() const {
  switch (kind) {
    case HopKind::local:
      return LinkId::local(from.c, from.d, from.p, to.p);
    case HopKind::global:
      return LinkId::global(from.c, from.d, from.p, port);
    default:
      return std::nullopt;
  }
}

Hop local_hop(const NetParams& net, const RouterAddr& at, int port) {
  const RouterAddr to = local_neighbor(net, at, port);
  return {port == 0 ? HopKind::hold : HopKind::local, port, at, to};
}

Hop global_hop(const NetParams& net, const RouterAddr& at, int port) {
  const RouterAddr to = global_neighbor(net, at, port).to;
  return {to == at ? HopKind::self_swap : HopKind::global, port, at, to};
}

SourceVectorHeader header_for(const NetParams& net, const RouterAddr& src, const RouterAddr& dst) {
  if (!valid(net, src) || !valid(net, dst)) throw PreconditionError("router address out of range");
  return {false, 3, mod(dst.c - src.c, net.K), mod(dst.p - src.d, net.M), mod(dst.d - src.p, net.M), false};
}

SourceVectorHeader glgl_header_for(const NetParams& net, const RouterAddr& src, const RouterAddr& dst) {
  if (!valid(net, src) || !valid(net, dst)) throw PreconditionError("router address out of range");
  return {false, 4, mod(dst.c - src.c, net.K), mod(dst.d - src.d, net.M), mod(dst.p - src.p, net.M), true};
}

RouterAddr vector_destination(const NetParams& net, const RouterAddr& src, const SourceVectorHeader& h) {
  if (h.four_hop) return {mod(src.c + h.gamma, net.K), mod(src.d + h.pi, net.M), mod(src.p + h.delta, net.M)};
  return {mod(src.c + h.gamma, net.K), mod(src.p + h.delta, net.M), mod(src.d + h.pi, net.M)};
}

namespace {

void check_fields(const NetParams& net, const SourceVectorHeader& h) {
  if (h.gamma < 0 || h.gamma >= net.K || h.pi < 0 || h.pi >= net.M || h.delta < 0 || h.delta >= net.M) {
    throw PreconditionError("source-vector fields out of range");
  }
  const int top = h.four_hop ? 4 : 3;
  if (h.b < 1 || h.b > top) {
    throw PreconditionError("source-vector counter b=" + std::to_string(h.b) + " cannot be stepped");
  }
}

}  // namespace

Hop next_hop(const NetParams& net, const RouterAddr& at, const SourceVectorHeader& h) {
  check_fields(net, h);
  if (h.four_hop) {
    switch (h.b) {
      case 4: return global_hop(net, at, h.gamma);
      case 3: return local_hop(net, at, h.pi);
      case 2: return global_hop(net, at, 0);
      default: return local_hop(net, at, h.delta);
    }
  }
  switch (h.b) {
    case 3: return local_hop(net, at, h.delta);
    case 2: return global_hop(net, at, h.gamma);
    default: return local_hop(net, at, h.pi);
  }
}

SourceVectorStep step_source_vector(const NetParams& net, const RouterAddr& at, const SourceVectorHeader& h) {
  const Hop hop = next_hop(net, at, h);
  SourceVectorHeader next = h;
  --next.b;
  return {hop.to, next, hop};
}

std::vector<Hop> path_of(const NetParams& net, const RouterAddr& src, const SourceVectorHeader& h) {
  std::vector<Hop> path;
  RouterAddr at = src;
  SourceVectorHeader cur = h;
  while (cur.b > 0) {
    auto s = step_source_vector(net, at, cur);
    path.push_back(s.hop);
    at = s.next;
    cur = s.header;
  }
  return path;
}

PortTables port_tables(const NetParams& net) {
  PortTables t;
  t.local.assign(static_cast<std::size_t>(net.M), std::vector<int>(static_cast<std::size_t>(net.M)));
  t.global.assign(static_cast<std::size_t>(net.K), std::vector<int>(static_cast<std::size_t>(net.K)));
  for (int row = 0; row < net.M; ++row)
    for (int col = 0; col < net.M; ++col) t.local[row][col] = mod(row - col, net.M);
  for (int row = 0; row < net.K; ++row)
    for (int col = 0; col < net.K; ++col) t.global[row][col] = mod(row - col, net.K);
  return t;
}

Deflection choose_deflection(const NetParams& net, const DeflectionPolicy& policy, const RouterAddr& src,
                             const RouterAddr& dst, std::mt19937_64& rng) {
  if (std::holds_alternative<FixedCPolicy>(policy)) return {0, mod(dst.c - src.c, net.K)};
  if (const auto* s = std::get_if<SuppliedPolicy>(&policy)) {
    if (s->local_port < 0 || s->local_port >= net.M || s->global_port < 0 || s->global_port >= net.K) {
      throw PreconditionError("supplied deflection ports out of range");
    }
    return {s->local_port, s->global_port};
  }
  const int D = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(net.M)));
  const int C = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(net.K)));
  return {D, C};
}

DestinationHeader destination_header(const RouterAddr& src, const RouterAddr& dst, int b, Deflection deflection) {
  if (b < 1 || b > 5) throw PreconditionError("destination counter must lie in 1..5");
  return {b, dst, src, deflection};
}

Hop next_hop(const NetParams& net, const DestinationHeader& h, const PortTables& tables) {
  const RouterAddr& at = h.loc;
  const RouterAddr& to = h.dest;
  switch (h.b) {
    case 5:
      if (h.deflection.local_port < 0 || h.deflection.local_port >= net.M)
        throw PreconditionError("deflection local port out of range");
      return local_hop(net, at, h.deflection.local_port);
    case 4:
      if (h.deflection.global_port < 0 || h.deflection.global_port >= net.K)
        throw PreconditionError("deflection global port out of range");
      return global_hop(net, at, h.deflection.global_port);
    case 3: return local_hop(net, at, tables.local[to.d][at.p]);
    case 2: return global_hop(net, at, tables.global[to.c][at.c]);
    case 1: return local_hop(net, at, tables.local[to.p][at.p]);
    default:
      throw PreconditionError("destination counter b=" + std::to_string(h.b) + " cannot be stepped");
  }
}

DestinationStep step_destination(const NetParams& net, const DestinationHeader& h, const PortTables& tables) {
  const Hop hop = next_hop(net, h, tables);
  DestinationHeader next = h;
  next.loc = hop.to;
  --next.b;
  return {next, hop};
}

std::vector<Hop> destination_path(const NetParams& net, const DestinationHeader& h) {
  const auto tables = port_tables(net);
  std::vector<Hop> path;
  DestinationHeader cur = h;
  while (cur.b > 0) {
    auto s = step_destination(net, cur, tables);
    path.push_back(s.hop);
    cur = s.header;
  }
  return path;
}

std::vector<Hop> deflect_path(const NetParams& net, const RouterAddr& src, const RouterAddr& dst,
                              const Deflection& choice, int length) {
  if (length != 4 && length != 5) throw PreconditionError("deflected paths have length 4 or 5");
  if (!valid(net, src) || !valid(net, dst)) throw PreconditionError("router address out of range");
  return destination_path(net, destination_header(src, dst, length, choice));
}

// ---- literals ----------------------------------------------------------

namespace {

std::vector<int> parse_ints(std::string_view body, std::string_view whole) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const auto comma = body.find(',', pos);
    const auto piece = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw std::invalid_argument("malformed header literal '" + std::string(whole) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Header parse_header(std::string_view text, const RouterAddr& at) {
  if (text.substr(0, 3) == "sv:") {
    const auto v = parse_ints(text.substr(3), text);
    if (v.size() != 5 || (v[0] != 0 && v[0] != 1) || v[1] < 0 || v[1] > 4) {
      throw std::invalid_argument("expected sv:B,b,gamma,pi,delta in '" + std::string(text) + "'");
    }
    return SourceVectorHeader{v[0] == 1, v[1], v[2], v[3], v[4], v[1] == 4};
  }
  if (text.substr(0, 3) == "dh:") {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("expected dh:b,c.d.p in '" + std::string(text) + "'");
    }
    const auto b = parse_ints(text.substr(3, comma - 3), text);
    return destination_header(at, parse_addr(text.substr(comma + 1)), b.at(0));
  }
  throw std::invalid_argument("unknown header literal '" + std::string(text) + "'");
}

std::string to_string(const Header& h) {
  std::ostringstream os;
  if (const auto* sv = std::get_if<SourceVectorHeader>(&h)) {
    os << "sv:" << (sv->broadcast ? 1 : 0) << ',' << sv->b << ',' << sv->gamma << ',' << sv->pi << ','
       << sv->delta;
  } else {
    const auto& dh = std::get<DestinationHeader>(h);
    os << "dh:" << dh.b << ',' << to_string(dh.dest);
  }
  return os.str();
}

std::string to_string(const Hop& hop) {
  switch (hop.kind) {
    case HopKind::hold: return "hold@" + to_string(hop.from);
    case HopKind::self_swap: return "swap0@" + to_string(hop.from);
    case HopKind::local: return to_string(*hop.link());
    case HopKind::global: return to_string(*hop.link());
  }
  return {};
}

}  // namespace d3
