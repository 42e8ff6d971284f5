#include "d3/report.hpp"

#include <sstream>

namespace d3 {

using nlohmann::json;

json to_json(const RouterAddr& a) { return to_string(a); }

json to_json(const LinkId& link) { return to_string(link); }

namespace {

json hop_log_json(const std::vector<HopRecord>& log) {
  json out = json::array();
  for (const auto& r : log) out.push_back({{"step", r.step}, {"hop", to_string(r.hop)}});
  return out;
}

}  // namespace

json to_json(const Metrics& m) {
  json out;
  out["rounds_launched"] = m.rounds_launched;
  out["delay_rounds"] = m.delay_rounds;
  out["total_steps"] = m.total_steps;
  out["total_hops"] = m.total_hops;
  out["hold_steps"] = m.hold_steps;
  out["wait_steps"] = m.wait_steps;
  out["packets"] = m.packets;
  out["conflict_count"] = m.conflicts.size();
  json conflicts = json::array();
  for (const auto& c : m.conflicts) {
    json logs = json::array();
    for (const auto& l : c.hop_logs) logs.push_back(hop_log_json(l));
    conflicts.push_back({{"step", c.step}, {"link", to_json(c.link)}, {"packets", c.packets}, {"hop_logs", logs}});
  }
  out["conflicts"] = std::move(conflicts);
  json deliveries = json::array();
  for (const auto& d : m.deliveries) {
    deliveries.push_back({{"src", to_json(d.src)},
                          {"dst", to_json(d.dst)},
                          {"tag", d.tag},
                          {"purpose", d.purpose == Purpose::payload ? "payload" : "request"},
                          {"arrival_step", d.arrival_step}});
  }
  out["deliveries"] = std::move(deliveries);
  out["max_link_load_per_step"] = m.max_link_load_per_step;
  return out;
}

json path_json(const std::vector<Hop>& path) {
  json out = json::array();
  for (const auto& hop : path) {
    json link = nullptr;
    if (auto l = hop.link()) {
      link = to_string(*l);
    } else {
      link = hop.kind == HopKind::hold ? "hold" : "swap0";
    }
    out.push_back({{"addr", to_string(hop.from)}, {"link", link}});
  }
  if (!path.empty()) out.push_back({{"addr", to_string(path.back().to)}, {"link", nullptr}});
  return out;
}

std::string link_loads_csv(const Metrics& m) {
  std::ostringstream os;
  os << "step,link,load\n";
  for (const auto& l : m.link_loads) os << l.step << ',' << to_string(l.link) << ',' << l.load << '\n';
  return os.str();
}

}  // namespace d3
