#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "d3/routing.hpp"
#include "d3/topology.hpp"

namespace d3 {

enum class SimMode : std::uint8_t { strict, queued };
enum class QueueDiscipline : std::uint8_t { lifo, fifo };

struct SimConfig {
  SimMode mode = SimMode::strict;
  QueueDiscipline discipline = QueueDiscipline::lifo;
  std::uint64_t seed = 0;
  /// 0 selects 4 * (slots + K*M + 16).
  int max_steps = 0;
};

/// Raised when a run cannot finish within max_steps.
class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request packets are read by attached nodes (all-to-one) and are not part
/// of a primitive's delivered payload.
enum class Purpose : std::uint8_t { payload, request };

struct Launch {
  RouterAddr source;
  Header header;
  std::int64_t tag = 0;
  Purpose purpose = Purpose::payload;
};

enum class SlotKind : std::uint8_t { data, delay };

/// One launch step. Delay slots are the "false" (0,1;0,0,0) headers: they
/// occupy the step and launch nothing that reaches the links.
struct Slot {
  SlotKind kind = SlotKind::data;
  std::vector<Launch> launches;
};

struct Delivery {
  RouterAddr src;
  RouterAddr dst;
  std::int64_t tag = 0;
  Purpose purpose = Purpose::payload;
  int arrival_step = 0;
  int packet = 0;
};

/// Program run by the node attached to a router when a packet is read out.
/// Returned launches leave `Schedule::reply_gap` steps after arrival + 1.
using ReplyRule = std::function<std::vector<Launch>(const Delivery&)>;

/// Slot k launches at step k + 1.
struct Schedule {
  std::string name;
  std::vector<Slot> slots;
  ReplyRule on_delivery;
  int reply_gap = 1;

  [[nodiscard]] int data_rounds() const;
  [[nodiscard]] int delay_rounds() const;
  /// Launch step of each data slot, in order.
  [[nodiscard]] std::vector<int> data_launch_steps() const;
};

struct HopRecord {
  int step = 0;
  Hop hop;
};

struct Conflict {
  int step = 0;
  LinkId link;
  std::vector<int> packets;
  std::vector<std::vector<HopRecord>> hop_logs;
};

struct LinkLoad {
  int step = 0;
  LinkId link;
  int load = 0;
};

struct Metrics {
  int rounds_launched = 0;
  int delay_rounds = 0;
  int total_steps = 0;  ///< step of the last arrival
  int total_hops = 0;   ///< link traversals; holds and self-swaps excluded
  int hold_steps = 0;
  int wait_steps = 0;   ///< packet-steps spent queued (queued mode)
  int packets = 0;
  std::vector<Conflict> conflicts;
  std::vector<Delivery> deliveries;
  std::vector<int> max_link_load_per_step;  ///< index step - 1
  std::vector<LinkLoad> link_loads;

  [[nodiscard]] bool ok() const { return conflicts.empty(); }
};

/// Simulates the schedule step by step until every packet has arrived.
/// Strict mode moves every packet and records each directed link carrying
/// more than one packet in a step; queued mode lets one packet per link move
/// and the rest wait. Throws SimError past max_steps.
[[nodiscard]] Metrics run(const NetParams& net, const Schedule& schedule, const SimConfig& config = {});

struct BroadcastCopy {
  Hop hop;
  SourceVectorHeader header;  ///< counter already decremented
};

/// Copies a broadcast header produces at `at` for one step: every local port
/// including the retained self-copy (b = 3, 1) or every global port (b = 2).
[[nodiscard]] std::vector<BroadcastCopy> broadcast_expand(const NetParams& net, const RouterAddr& at,
                                                          const SourceVectorHeader& h);

/// Conflict on minimal paths for two simultaneous lgl transmissions with
/// distinct sources and destinations: same source drawer, same destination
/// drawer, and those drawers differ (otherwise the shared global hop is the
/// gamma = 0 self-pairing, which uses no link).
[[nodiscard]] bool conflict_predicate(const RouterAddr& src1, const RouterAddr& dst1, const RouterAddr& src2,
                                      const RouterAddr& dst2);

/// Runs both minimal-path packets launched together in strict mode.
[[nodiscard]] bool simulated_pair_conflict(const NetParams& net, const RouterAddr& src1, const RouterAddr& dst1,
                                           const RouterAddr& src2, const RouterAddr& dst2);

struct DeliveryKey {
  RouterAddr src;
  RouterAddr dst;
  std::int64_t tag = 0;

  auto operator<=>(const DeliveryKey&) const = default;
};

struct DeliveryCheck {
  bool ok = false;
  std::vector<DeliveryKey> missing;
  std::vector<DeliveryKey> unexpected;  ///< extra or duplicate
};

/// Exact multiset comparison of payload deliveries against `expected`.
[[nodiscard]] DeliveryCheck verify_delivery(const Metrics& metrics, std::vector<DeliveryKey> expected);

}  // namespace d3
