#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "d3/topology.hpp"

namespace d3 {

/// Synchronized source-vector header (B, b; gamma, pi, delta).
///
/// A three-hop header applies delta (local), gamma (global), pi (local) as b
/// counts 3, 2, 1. A four-hop header (b = 4 at launch, `four_hop` set) is the
/// glgl path gamma (global), pi (local), 0 (global), delta (local). Only b
/// changes in transit.
struct SourceVectorHeader {
  bool broadcast = false;
  int b = 3;
  int gamma = 0;
  int pi = 0;
  int delta = 0;
  bool four_hop = false;

  bool operator==(const SourceVectorHeader&) const = default;
};

/// Local and global port choice for deflected (b = 5 / b = 4) destination
/// headers, fixed when the packet is launched.
struct Deflection {
  int local_port = 0;
  int global_port = 0;

  bool operator==(const Deflection&) const = default;
};

/// Destination header (b; dest, loc). loc is rewritten after every hop.
struct DestinationHeader {
  int b = 3;
  RouterAddr dest;
  RouterAddr loc;
  Deflection deflection;

  bool operator==(const DestinationHeader&) const = default;
};

using Header = std::variant<SourceVectorHeader, DestinationHeader>;

[[nodiscard]] int counter(const Header& h);
[[nodiscard]] bool is_broadcast(const Header& h);

/// What a packet does for one time step.
enum class HopKind : std::uint8_t {
  hold,        ///< local port 0; no link
  self_swap,   ///< global port 0 at a (c,p,p) router; no link
  local,
  global,
};

struct Hop {
  HopKind kind = HopKind::hold;
  int port = 0;
  RouterAddr from;
  RouterAddr to;

  [[nodiscard]] std::optional<LinkId> link() const;
  bool operator==(const Hop&) const = default;
};

[[nodiscard]] Hop local_hop(const NetParams& net, const RouterAddr& at, int port);
[[nodiscard]] Hop global_hop(const NetParams& net, const RouterAddr& at, int port);

// ---- source-vector routing ---------------------------------------------

/// Minimal three-hop header from src to dst: (3; c'-c, p'-d, d'-p).
[[nodiscard]] SourceVectorHeader header_for(const NetParams& net, const RouterAddr& src, const RouterAddr& dst);

/// Four-hop glgl header that jumps straight to dst's cabinet.
[[nodiscard]] SourceVectorHeader glgl_header_for(const NetParams& net, const RouterAddr& src,
                                                 const RouterAddr& dst);

/// Where (3;g,p,d) from src arrives: (c+g, p+d, d+p) in coordinates.
[[nodiscard]] RouterAddr vector_destination(const NetParams& net, const RouterAddr& src,
                                            const SourceVectorHeader& h);

/// The port a non-broadcast source-vector header uses at its current counter.
[[nodiscard]] Hop next_hop(const NetParams& net, const RouterAddr& at, const SourceVectorHeader& h);

struct SourceVectorStep {
  RouterAddr next;
  SourceVectorHeader header;
  Hop hop;
};

/// One time step. Throws PreconditionError if b == 0 or a field is out of range.
[[nodiscard]] SourceVectorStep step_source_vector(const NetParams& net, const RouterAddr& at,
                                                  const SourceVectorHeader& h);

/// Whole trajectory; one Hop per counted step.
[[nodiscard]] std::vector<Hop> path_of(const NetParams& net, const RouterAddr& src, const SourceVectorHeader& h);

// ---- destination routing -----------------------------------------------

/// Port lookup tables; entry [row][col] = row - col, rows indexed by the
/// destination coordinate, columns by the current location.
struct PortTables {
  std::vector<std::vector<int>> local;   ///< M x M
  std::vector<std::vector<int>> global;  ///< K x K
};

[[nodiscard]] PortTables port_tables(const NetParams& net);

struct RandomPolicy {
  std::uint64_t seed = 0;
};
struct FixedCPolicy {};
struct SuppliedPolicy {
  int local_port = 0;
  int global_port = 0;
};

using DeflectionPolicy = std::variant<RandomPolicy, FixedCPolicy, SuppliedPolicy>;

/// Resolves a policy into concrete ports at launch time. Random draws from
/// rng; FixedC uses C = c'-c and D = 0.
[[nodiscard]] Deflection choose_deflection(const NetParams& net, const DeflectionPolicy& policy,
                                           const RouterAddr& src, const RouterAddr& dst, std::mt19937_64& rng);

[[nodiscard]] DestinationHeader destination_header(const RouterAddr& src, const RouterAddr& dst, int b = 3,
                                                   Deflection deflection = {});

/// Port used at the current counter value. b in {1,2,3} reads the tables only.
[[nodiscard]] Hop next_hop(const NetParams& net, const DestinationHeader& h, const PortTables& tables);

struct DestinationStep {
  DestinationHeader header;
  Hop hop;
};

[[nodiscard]] DestinationStep step_destination(const NetParams& net, const DestinationHeader& h,
                                               const PortTables& tables);

[[nodiscard]] std::vector<Hop> destination_path(const NetParams& net, const DestinationHeader& h);

/// Deflected trajectory of `length` steps (5: D then C then lgl; 4: C then lgl).
[[nodiscard]] std::vector<Hop> deflect_path(const NetParams& net, const RouterAddr& src, const RouterAddr& dst,
                                            const Deflection& choice, int length = 5);

// ---- literals ----------------------------------------------------------

/// "sv:B,b,g,p,d" or "dh:b,c.d.p"; a dh literal needs the launch router for loc.
[[nodiscard]] Header parse_header(std::string_view text, const RouterAddr& at);
[[nodiscard]] std::string to_string(const Header& h);
[[nodiscard]] std::string to_string(const Hop& hop);

}  // namespace d3
