#include "d3/sim.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace d3 {

int Schedule::data_rounds() const {
  return static_cast<int>(std::count_if(slots.begin(), slots.end(),
                                        [](const Slot& s) { return s.kind == SlotKind::data; }));
}

int Schedule::delay_rounds() const { return static_cast<int>(slots.size()) - data_rounds(); }

std::vector<int> Schedule::data_launch_steps() const {
  std::vector<int> steps;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (slots[k].kind == SlotKind::data) steps.push_back(static_cast<int>(k) + 1);
  }
  return steps;
}

std::vector<BroadcastCopy> broadcast_expand(const NetParams& net, const RouterAddr& at,
                                            const SourceVectorHeader& h) {
  if (!h.broadcast) throw PreconditionError("broadcast_expand needs a header with the broadcast bit set");
  if (h.four_hop || h.b < 1 || h.b > 3) throw PreconditionError("broadcast headers count down from b=3");
  std::vector<BroadcastCopy> copies;
  SourceVectorHeader child = h;
  --child.b;
  if (h.b == 2) {
    for (int g = 0; g < net.K; ++g) copies.push_back({global_hop(net, at, g), child});
  } else {
    for (int l = 0; l < net.M; ++l) copies.push_back({local_hop(net, at, l), child});
  }
  return copies;
}

namespace {

struct Packet {
  int id = 0;
  Header header;
  RouterAddr src;
  RouterAddr at;
  std::int64_t tag = 0;
  Purpose purpose = Purpose::payload;
  int queued_since = 0;
  std::optional<Hop> pending;
  std::vector<HopRecord> log;
};

class Engine {
 public:
  Engine(const NetParams& net, const Schedule& schedule, const SimConfig& config)
      : net_(net), schedule_(schedule), config_(config), tables_(port_tables(net)) {}

  Metrics run() {
    const int limit = config_.max_steps > 0
                          ? config_.max_steps
                          : 4 * (static_cast<int>(schedule_.slots.size()) + net_.K * net_.M + 16);
    metrics_.rounds_launched = schedule_.data_rounds();
    metrics_.delay_rounds = schedule_.delay_rounds();

    for (int step = 1;; ++step) {
      if (step > limit) {
        throw SimError("schedule '" + schedule_.name + "' still has " + std::to_string(active_.size()) +
                       " packets in flight after max_steps=" + std::to_string(limit));
      }
      launch_for(step);
      if (active_.empty()) {
        if (step >= static_cast<int>(schedule_.slots.size()) && replies_.empty()) break;
        metrics_.max_link_load_per_step.push_back(0);
        continue;
      }
      advance(step);
    }
    while (static_cast<int>(metrics_.max_link_load_per_step.size()) > metrics_.total_steps) {
      metrics_.max_link_load_per_step.pop_back();
    }
    for (auto& conflict : metrics_.conflicts) {
      for (int id : conflict.packets) conflict.hop_logs.push_back(logs_.at(id));
    }
    return std::move(metrics_);
  }

 private:
  void add(const Launch& l, int step) {
    if (!valid(net_, l.source)) throw PreconditionError("launch at invalid router " + to_string(l.source));
    Packet p;
    p.id = next_id_++;
    p.header = l.header;
    if (auto* dh = std::get_if<DestinationHeader>(&p.header)) dh->loc = l.source;
    if (counter(p.header) < 1) throw PreconditionError("launched header must have b >= 1");
    p.src = l.source;
    p.at = l.source;
    p.tag = l.tag;
    p.purpose = l.purpose;
    p.queued_since = step;
    ++metrics_.packets;
    active_.push_back(std::move(p));
  }

  void launch_for(int step) {
    const auto k = static_cast<std::size_t>(step - 1);
    if (k < schedule_.slots.size()) {
      for (const auto& l : schedule_.slots[k].launches) add(l, step);
    }
    if (auto it = replies_.find(step); it != replies_.end()) {
      for (const auto& l : it->second) add(l, step);
      replies_.erase(it);
    }
  }

  // Replaces every broadcast packet without a pending hop by its copies.
  void expand_broadcasts() {
    std::vector<Packet> next;
    next.reserve(active_.size());
    for (auto& p : active_) {
      if (p.pending || !is_broadcast(p.header)) {
        next.push_back(std::move(p));
        continue;
      }
      const auto& h = std::get<SourceVectorHeader>(p.header);
      auto copies = broadcast_expand(net_, p.at, h);
      for (std::size_t i = 0; i < copies.size(); ++i) {
        Packet child;
        child.id = i == 0 ? p.id : next_id_++;
        if (i > 0) ++metrics_.packets;
        child.header = h;
        child.src = p.src;
        child.at = p.at;
        child.tag = p.tag;
        child.purpose = p.purpose;
        child.queued_since = p.queued_since;
        child.pending = copies[i].hop;
        child.log = p.log;
        next.push_back(std::move(child));
      }
    }
    active_ = std::move(next);
  }

  Hop hop_for(const Packet& p) const {
    if (p.pending) return *p.pending;
    if (const auto* sv = std::get_if<SourceVectorHeader>(&p.header)) return next_hop(net_, p.at, *sv);
    return next_hop(net_, std::get<DestinationHeader>(p.header), tables_);
  }

  bool wins(const Packet& a, const Packet& b) const {
    if (config_.discipline == QueueDiscipline::lifo) {
      return a.queued_since != b.queued_since ? a.queued_since > b.queued_since : a.id > b.id;
    }
    return a.queued_since != b.queued_since ? a.queued_since < b.queued_since : a.id < b.id;
  }

  void advance(int step) {
    expand_broadcasts();
    std::vector<Hop> hops;
    hops.reserve(active_.size());
    std::map<LinkId, std::vector<std::size_t>> users;
    for (std::size_t i = 0; i < active_.size(); ++i) {
      hops.push_back(hop_for(active_[i]));
      if (auto link = hops.back().link()) users[*link].push_back(i);
    }

    std::vector<char> moves(active_.size(), 1);
    int max_load = 0;
    for (const auto& [link, who] : users) {
      const int load = static_cast<int>(who.size());
      if (who.size() > 1) {
        if (config_.mode == SimMode::strict) {
          Conflict c{step, link, {}, {}};
          for (auto i : who) c.packets.push_back(active_[i].id);
          metrics_.conflicts.push_back(std::move(c));
        } else {
          std::size_t best = who.front();
          for (auto i : who) {
            if (wins(active_[i], active_[best])) best = i;
          }
          for (auto i : who) moves[i] = i == best ? 1 : 0;
        }
      }
      const int carried = config_.mode == SimMode::strict ? load : 1;
      max_load = std::max(max_load, carried);
      metrics_.link_loads.push_back({step, link, carried});
    }
    metrics_.max_link_load_per_step.push_back(max_load);

    std::vector<Packet> still;
    still.reserve(active_.size());
    for (std::size_t i = 0; i < active_.size(); ++i) {
      Packet& p = active_[i];
      if (!moves[i]) {
        p.pending = hops[i];
        ++metrics_.wait_steps;
        still.push_back(std::move(p));
        continue;
      }
      const Hop& hop = hops[i];
      p.log.push_back({step, hop});
      p.pending.reset();
      p.at = hop.to;
      p.queued_since = step + 1;
      if (hop.link()) {
        ++metrics_.total_hops;
      } else {
        ++metrics_.hold_steps;
      }
      int b = 0;
      std::visit(
          [&](auto& h) {
            --h.b;
            b = h.b;
          },
          p.header);
      if (auto* dh = std::get_if<DestinationHeader>(&p.header)) dh->loc = hop.to;
      if (b > 0) {
        still.push_back(std::move(p));
        continue;
      }
      deliver(p, step);
    }
    active_ = std::move(still);
  }

  void deliver(Packet& p, int step) {
    Delivery d{p.src, p.at, p.tag, p.purpose, step, p.id};
    metrics_.deliveries.push_back(d);
    metrics_.total_steps = std::max(metrics_.total_steps, step);
    logs_[p.id] = std::move(p.log);
    if (schedule_.on_delivery) {
      auto replies = schedule_.on_delivery(d);
      if (!replies.empty()) {
        auto& bucket = replies_[step + 1 + schedule_.reply_gap];
        bucket.insert(bucket.end(), replies.begin(), replies.end());
      }
    }
  }

  const NetParams& net_;
  const Schedule& schedule_;
  SimConfig config_;
  PortTables tables_;
  Metrics metrics_;
  std::vector<Packet> active_;
  std::map<int, std::vector<Launch>> replies_;
  std::map<int, std::vector<HopRecord>> logs_;
  int next_id_ = 0;
};

}  // namespace

Metrics run(const NetParams& net, const Schedule& schedule, const SimConfig& config) {
  return Engine(net, schedule, config).run();
}

bool conflict_predicate(const RouterAddr& src1, const RouterAddr& dst1, const RouterAddr& src2,
                        const RouterAddr& dst2) {
  if (dst1 == dst2) throw PreconditionError("conflict predicate needs distinct destinations");
  if (src1 == src2) throw PreconditionError("conflict predicate needs distinct sources");
  const bool same_source_drawer = src1.c == src2.c && src1.d == src2.d;
  const bool same_dest_drawer = dst1.c == dst2.c && dst1.d == dst2.d;
  const bool intra_drawer = src1.c == dst1.c && src1.d == dst1.d;
  return same_source_drawer && same_dest_drawer && !intra_drawer;
}

bool simulated_pair_conflict(const NetParams& net, const RouterAddr& src1, const RouterAddr& dst1,
                             const RouterAddr& src2, const RouterAddr& dst2) {
  Schedule s;
  s.name = "pair";
  s.slots.push_back({SlotKind::data,
                     {{src1, header_for(net, src1, dst1), 0, Purpose::payload},
                      {src2, header_for(net, src2, dst2), 1, Purpose::payload}}});
  return !run(net, s).conflicts.empty();
}

DeliveryCheck verify_delivery(const Metrics& metrics, std::vector<DeliveryKey> expected) {
  std::vector<DeliveryKey> got;
  for (const auto& d : metrics.deliveries) {
    if (d.purpose == Purpose::payload) got.push_back({d.src, d.dst, d.tag});
  }
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  DeliveryCheck check;
  std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(), std::back_inserter(check.missing));
  std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                      std::back_inserter(check.unexpected));
  check.ok = check.missing.empty() && check.unexpected.empty();
  return check;
}

}  // namespace d3
