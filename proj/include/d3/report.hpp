#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "d3/sim.hpp"

namespace d3 {

[[nodiscard]] nlohmann::json to_json(const RouterAddr& a);
[[nodiscard]] nlohmann::json to_json(const LinkId& link);
[[nodiscard]] nlohmann::json to_json(const Metrics& m);

/// [{ "addr": "c.d.p", "link": "..." }, ...] starting at the source; the last
/// entry has link null.
[[nodiscard]] nlohmann::json path_json(const std::vector<Hop>& path);

/// "step,link,load" rows.
[[nodiscard]] std::string link_loads_csv(const Metrics& m);

}  // namespace d3
