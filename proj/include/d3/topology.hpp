#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace d3 {

/// Raised when an input violates an operation's precondition. Carries the
/// hypothesis that failed so front ends can surface it verbatim.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shape of a Swapped Dragonfly D3(K,M): K cabinets of M drawers of M routers.
struct NetParams {
  int K = 1;
  int M = 2;
  /// M even and M >= 4; the collective schedulers refuse anything else.
  bool primitives_ok = false;

  [[nodiscard]] int router_count() const { return K * M * M; }
  [[nodiscard]] int global_ports() const { return K; }
  [[nodiscard]] int local_ports() const { return M - 1; }

  bool operator==(const NetParams&) const = default;
};

/// Validates (K, M). Throws PreconditionError for K < 1 or M < 2.
NetParams make_params(int K, int M);

/// Router coordinate (cabinet, drawer, router).
struct RouterAddr {
  int c = 0;
  int d = 0;
  int p = 0;

  auto operator<=>(const RouterAddr&) const = default;
};

[[nodiscard]] bool valid(const NetParams& net, const RouterAddr& a);
[[nodiscard]] int index_of(const NetParams& net, const RouterAddr& a);
[[nodiscard]] RouterAddr addr_of(const NetParams& net, int index);
/// All routers in (c,d,p) lexicographic order.
[[nodiscard]] std::vector<RouterAddr> all_routers(const NetParams& net);

/// "c.d.p"
[[nodiscard]] std::string to_string(const RouterAddr& a);
/// Parses "c.d.p"; throws std::invalid_argument on malformed text.
[[nodiscard]] RouterAddr parse_addr(std::string_view text);

/// Non-negative residue.
[[nodiscard]] constexpr int mod(int x, int m) {
  const int r = x % m;
  return r < 0 ? r + m : r;
}

enum class LinkKind : std::uint8_t { local, global };

/// A directed link. Local: (c,d,p) -> (c,d,q), p != q.
/// Global: (c,d,p) -> (c+q, p, d) leaving through global port q.
/// Hold steps and the gamma=0 self-pairing at (c,p,p) have no LinkId.
struct LinkId {
  LinkKind kind = LinkKind::local;
  int c = 0;
  int d = 0;
  int p = 0;
  int q = 0;  ///< target router (local) or global port (global)

  static LinkId local(int c, int d, int from_p, int to_p) {
    return {LinkKind::local, c, d, from_p, to_p};
  }
  static LinkId global(int c, int d, int p, int port) {
    return {LinkKind::global, c, d, p, port};
  }

  [[nodiscard]] RouterAddr from() const { return {c, d, p}; }
  [[nodiscard]] RouterAddr to(const NetParams& net) const;
  [[nodiscard]] LinkId reverse(const NetParams& net) const;

  auto operator<=>(const LinkId&) const = default;
};

/// "l:c.d.p>c.d.q" or "g:c.d.p/port"
[[nodiscard]] std::string to_string(const LinkId& link);

// ---- neighbor functions -------------------------------------------------

/// (c, d, p+port mod M). Port 0 is the hold port and returns addr unchanged.
[[nodiscard]] RouterAddr local_neighbor(const NetParams& net, const RouterAddr& addr, int port);

struct GlobalHop {
  RouterAddr to;
  int return_port = 0;
};

/// (c+port mod K, p, d) together with the port it arrives on (-port mod K).
[[nodiscard]] GlobalHop global_neighbor(const NetParams& net, const RouterAddr& addr, int port);

/// True when global port 0 at addr pairs the router with itself, i.e. d == p.
[[nodiscard]] constexpr bool is_swap_fixed_point(const RouterAddr& a) { return a.d == a.p; }

/// Every directed link in deterministic order (local links first).
[[nodiscard]] std::vector<LinkId> all_links(const NetParams& net);
[[nodiscard]] std::vector<LinkId> global_links(const NetParams& net);

/// Neighbour lists indexed by index_of(); hold and self-pairings excluded.
[[nodiscard]] std::vector<std::vector<int>> adjacency(const NetParams& net);

// ---- distances ----------------------------------------------------------

/// Unweighted shortest path length over local and global links.
[[nodiscard]] int bfs_distance(const NetParams& net, const RouterAddr& src, const RouterAddr& dst);
/// Distances from src to every router, indexed by index_of().
[[nodiscard]] std::vector<int> bfs_distances(const NetParams& net, const RouterAddr& src);

// ---- wiring -------------------------------------------------------------

/// A ribbon of width M joining global port `port` of every router of drawer
/// (cabinet, drawer) to port -port of column `target_column` of
/// `target_cabinet`, in router order 0..M-1.
struct RibbonBundle {
  int cabinet = 0;
  int drawer = 0;
  int port = 0;
  int target_cabinet = 0;
  int target_column = 0;
  int target_port = 0;
  int width = 0;

  auto operator<=>(const RibbonBundle&) const = default;
};

[[nodiscard]] std::vector<RibbonBundle> wiring_plan(const NetParams& net);
/// Directed global links carried by a bundle, in router order.
[[nodiscard]] std::vector<LinkId> flatten(const RibbonBundle& bundle);
[[nodiscard]] std::string wiring_csv(const std::vector<RibbonBundle>& plan);

// ---- cuts ---------------------------------------------------------------

/// Directed links (local and global) with exactly one endpoint in side_a.
/// side_a must be a nonempty proper subset of the routers.
[[nodiscard]] long long cut_size(const NetParams& net, const std::vector<RouterAddr>& side_a);

// ---- export -------------------------------------------------------------

enum class GraphFormat { edge_list, dot };

[[nodiscard]] GraphFormat parse_graph_format(std::string_view name);
[[nodiscard]] std::string export_graph(const NetParams& net, GraphFormat format);

}  // namespace d3
