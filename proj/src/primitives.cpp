#include "d3/primitives.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "d3/rng.hpp"

namespace d3 {

namespace {

void require_primitive_params(const NetParams& net) {
  if (!net.primitives_ok) {
    throw PreconditionError("collective schedules assume M is even and M >= 4 (got M=" + std::to_string(net.M) +
                            ")");
  }
}

void require_router(const NetParams& net, const RouterAddr& a, const char* role) {
  if (!valid(net, a)) throw PreconditionError(std::string(role) + " " + to_string(a) + " is not a router");
}

Slot delay_slot() { return {SlotKind::delay, {}}; }

}  // namespace

Schedule apply_protocol(std::vector<Slot> rounds, Protocol protocol) {
  if (rounds.empty()) throw PreconditionError("apply_protocol needs at least one round");
  Schedule s;
  const int per_pair = protocol == Protocol::p1 ? 0 : protocol == Protocol::p2 ? 1 : 2;
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    s.slots.push_back(std::move(rounds[i]));
    const bool pair_done = i % 2 == 1;
    const bool trailing_single = i + 1 == rounds.size() && i % 2 == 0;
    if (pair_done) {
      for (int k = 0; k < per_pair; ++k) s.slots.push_back(delay_slot());
    } else if (trailing_single && protocol == Protocol::p3) {
      s.slots.push_back(delay_slot());
    }
  }
  return s;
}

Plan schedule_broadcast(const NetParams& net, const RouterAddr& root, int count) {
  require_primitive_params(net);
  require_router(net, root, "broadcast root");
  if (count < 1) throw PreconditionError("broadcast count must be at least 1");
  std::vector<Slot> rounds;
  for (int i = 0; i < count; ++i) {
    Slot slot;
    slot.launches.push_back({root, SourceVectorHeader{true, 3, 0, 0, 0, false}, i, Purpose::payload});
    rounds.push_back(std::move(slot));
  }
  Plan plan;
  plan.schedule = apply_protocol(std::move(rounds), root.d == root.p ? Protocol::p3 : Protocol::p1);
  plan.schedule.name = "broadcast";
  for (int i = 0; i < count; ++i) {
    for (const auto& r : all_routers(net)) plan.expected.push_back({root, r, i});
  }
  return plan;
}

Plan schedule_one_to_all(const NetParams& net, const RouterAddr& root, OneToAllOptions options) {
  require_primitive_params(net);
  require_router(net, root, "one-to-all root");
  const bool fixed_point = root.d == root.p;
  Plan plan;
  auto& slots = plan.schedule.slots;
  plan.schedule.name = "one2all";
  // gamma of the data round launched at each step, -1 for delays
  std::vector<int> gamma_at;
  for (int i = options.paper_exact ? 1 : 0; i < net.K * net.M; ++i) {
    const int gamma = i / net.M;
    const int pi = i % net.M;
    if (fixed_point && options.insert_delays) {
      // a gamma = 0 round delivers through the root's own drawer on its last
      // hop, two steps after launch, while a new round scatters from the root
      while (gamma_at.size() >= 2 && gamma_at[gamma_at.size() - 2] == 0) {
        slots.push_back(delay_slot());
        gamma_at.push_back(-1);
      }
    }
    Slot slot;
    for (int delta = 0; delta < net.M; ++delta) {
      SourceVectorHeader h{false, 3, gamma, pi, delta, false};
      slot.launches.push_back({root, h, i, Purpose::payload});
      plan.expected.push_back({root, vector_destination(net, root, h), i});
    }
    slots.push_back(std::move(slot));
    gamma_at.push_back(gamma);
  }
  return plan;
}

Plan schedule_all_to_one(const NetParams& net, const RouterAddr& sink) {
  require_primitive_params(net);
  require_router(net, sink, "all-to-one sink");
  if (sink.d == sink.p) {
    throw PreconditionError("all-to-one requires a sink with d != p (hypothesis \"if d != p\"); sink " +
                            to_string(sink) + " has d == p");
  }
  Plan plan;
  plan.schedule.name = "all2one";
  const int rounds = net.K * net.M;
  for (int i = 0; i < rounds; ++i) {
    Slot slot;
    slot.launches.push_back({sink, SourceVectorHeader{true, 3, 0, 0, 0, false}, i, Purpose::request});
    plan.schedule.slots.push_back(std::move(slot));
  }
  const NetParams n = net;
  const int M = net.M;
  plan.schedule.reply_gap = 1;
  plan.schedule.on_delivery = [n, sink, M](const Delivery& d) -> std::vector<Launch> {
    if (d.purpose != Purpose::request) return {};
    const int gamma = static_cast<int>(d.tag) / M;
    const int pi = static_cast<int>(d.tag) % M;
    if (d.dst.c != gamma || d.dst.p != pi) return {};
    return {{d.dst, header_for(n, d.dst, sink), d.tag, Purpose::payload}};
  };
  for (const auto& r : all_routers(net)) plan.expected.push_back({r, sink, r.p + r.c * M});
  return plan;
}

SourceVectorHeader all_to_all_vector(const NetParams& net, int round) {
  const int M = net.M;
  return {false, 3, round / (M * M), round % M, (round / M) % M, false};
}

Plan schedule_all_to_all(const NetParams& net, AllToAllOptions options) {
  require_primitive_params(net);
  Plan plan;
  plan.schedule.name = "all2all";
  const auto routers = all_routers(net);
  const int rounds = net.K * net.M * net.M;
  for (int i = 0; i < rounds; ++i) {
    const auto h = all_to_all_vector(net, i);
    if (options.insert_delays && mod(h.pi - 2, net.M) == h.delta) plan.schedule.slots.push_back(delay_slot());
    Slot slot;
    slot.launches.reserve(routers.size());
    for (const auto& r : routers) {
      slot.launches.push_back({r, h, i, Purpose::payload});
      plan.expected.push_back({r, vector_destination(net, r, h), i});
    }
    plan.schedule.slots.push_back(std::move(slot));
  }
  return plan;
}

Plan schedule_permutation(const NetParams& net, const std::vector<RouterAddr>& perm) {
  require_primitive_params(net);
  if (static_cast<int>(perm.size()) != net.router_count()) {
    throw PreconditionError("permutation must list one destination per router");
  }
  std::vector<char> hit(perm.size(), 0);
  for (const auto& dst : perm) {
    require_router(net, dst, "permutation destination");
    auto& h = hit[static_cast<std::size_t>(index_of(net, dst))];
    if (h) throw PreconditionError("permutation is not bijective: " + to_string(dst) + " is hit twice");
    h = 1;
  }

  // packets per (source drawer, destination drawer)
  std::map<std::pair<int, int>, int> pair_load;
  auto drawer = [&](const RouterAddr& a) { return a.c * net.M + a.d; };
  for (int i = 0; i < net.router_count(); ++i) {
    ++pair_load[{drawer(addr_of(net, i)), drawer(perm[static_cast<std::size_t>(i)])}];
  }

  Plan plan;
  plan.mode = SimMode::queued;
  plan.schedule.name = "perm";
  plan.schedule.slots.push_back(delay_slot());  // in-drawer destination exchange
  Slot slot;
  for (int i = 0; i < net.router_count(); ++i) {
    const RouterAddr src = addr_of(net, i);
    const RouterAddr dst = perm[static_cast<std::size_t>(i)];
    const int from = drawer(src);
    const int to = drawer(dst);
    if (from != to && pair_load[{from, to}] >= 2) {
      const Deflection jump{0, mod(dst.c - src.c, net.K)};
      slot.launches.push_back({src, destination_header(src, dst, 4, jump), i, Purpose::payload});
    } else {
      slot.launches.push_back({src, header_for(net, src, dst), i, Purpose::payload});
    }
    plan.expected.push_back({src, dst, i});
  }
  plan.schedule.slots.push_back(std::move(slot));
  return plan;
}

std::vector<RouterAddr> identity_permutation(const NetParams& net) { return all_routers(net); }

std::vector<RouterAddr> random_permutation(const NetParams& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto perm = all_routers(net);
  seeded_shuffle(perm, rng);
  return perm;
}

std::vector<RouterAddr> parse_permutation(const NetParams& net, const std::string& text) {
  std::vector<RouterAddr> perm(static_cast<std::size_t>(net.router_count()), RouterAddr{-1, -1, -1});
  std::istringstream in(text);
  std::string line;
  int seen = 0;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, arrow, b;
    if (!(fields >> a)) continue;
    if (!(fields >> arrow >> b) || arrow != "->") {
      throw std::invalid_argument("permutation line '" + line + "' is not 'c.d.p -> c.d.p'");
    }
    const RouterAddr src = parse_addr(a);
    require_router(net, src, "permutation source");
    auto& slot = perm[static_cast<std::size_t>(index_of(net, src))];
    if (slot.c >= 0) throw PreconditionError("permutation lists source " + a + " twice");
    slot = parse_addr(b);
    ++seen;
  }
  if (seen != net.router_count()) {
    throw PreconditionError("permutation lists " + std::to_string(seen) + " sources, expected " +
                            std::to_string(net.router_count()));
  }
  return perm;
}

}  // namespace d3
