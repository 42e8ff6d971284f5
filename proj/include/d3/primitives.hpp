#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d3/sim.hpp"

namespace d3 {

/// Pipelining patterns. P1 launches a round every step; P2 inserts one delay
/// after every pair of rounds; P3 inserts two.
enum class Protocol : std::uint8_t { p1, p2, p3 };

/// Interleaves delay slots into `rounds` according to the protocol pattern.
[[nodiscard]] Schedule apply_protocol(std::vector<Slot> rounds, Protocol protocol);

/// A schedule plus the payload deliveries a correct run must produce and the
/// simulation mode the primitive is meant to run under.
struct Plan {
  Schedule schedule;
  std::vector<DeliveryKey> expected;
  SimMode mode = SimMode::strict;
};

/// N broadcasts of (1,3;0,0,0): Protocol 1 if root.d != root.p, else Protocol 3.
[[nodiscard]] Plan schedule_broadcast(const NetParams& net, const RouterAddr& root, int count);

struct OneToAllOptions {
  /// Start at round 1 like the published loop, leaving column (c,*,d) unserved.
  bool paper_exact = false;
  bool insert_delays = true;
};

/// Rounds i = pi + gamma*M, each scattering M packets (0,3;gamma,pi,*). When
/// root.d == root.p a delay precedes any round launched two steps after a
/// gamma = 0 round.
[[nodiscard]] Plan schedule_one_to_all(const NetParams& net, const RouterAddr& root, OneToAllOptions options = {});

/// KM request broadcasts from the sink; router (gamma, d', pi) answers request
/// i = pi + gamma*M after one delay step with (3; c-gamma, p-d', d-pi).
/// Requires sink.d != sink.p.
[[nodiscard]] Plan schedule_all_to_one(const NetParams& net, const RouterAddr& sink);

struct AllToAllOptions {
  bool insert_delays = true;
};

/// Rounds i = pi + delta*M + gamma*M^2; a delay precedes round i whenever
/// pi(i) - 2 mod M == delta(i).
[[nodiscard]] Plan schedule_all_to_all(const NetParams& net, AllToAllOptions options = {});

/// Decomposes all-to-all round i into its vector.
[[nodiscard]] SourceVectorHeader all_to_all_vector(const NetParams& net, int round);

/// perm[index_of(src)] is src's destination. One control step for the
/// in-drawer destination exchange, then a single launch: drawer pairs that
/// exchange two or more packets go glgl (b = 4, C = c'-c), the rest lgl.
[[nodiscard]] Plan schedule_permutation(const NetParams& net, const std::vector<RouterAddr>& perm);

[[nodiscard]] std::vector<RouterAddr> random_permutation(const NetParams& net, std::uint64_t seed);
[[nodiscard]] std::vector<RouterAddr> identity_permutation(const NetParams& net);
/// Lines "c.d.p -> c'.d'.p"; blank lines and '#' comments are skipped.
[[nodiscard]] std::vector<RouterAddr> parse_permutation(const NetParams& net, const std::string& text);

}  // namespace d3
