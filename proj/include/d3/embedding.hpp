#pragma once

#include <string>
#include <variant>
#include <vector>

#include "d3/primitives.hpp"
#include "d3/routing.hpp"
#include "d3/topology.hpp"

namespace d3 {

/// A copy of D3(|kappa|, |lambda|) inside a host D3(N, M): logical cabinet i
/// sits on host cabinet kappa[i], logical drawer/router index x on lambda[x].
/// Both subsets are kept sorted, so logical index = rank.
struct EmbeddingSpec {
  NetParams host;
  std::vector<int> kappa;
  std::vector<int> lambda;
  /// global_ports[i][j] = kappa[j] - kappa[i] mod N: the host port that
  /// logical cabinet i uses to reach logical cabinet j.
  std::vector<std::vector<int>> global_ports;
  /// local_ports[i][j] = lambda[j] - lambda[i] mod M.
  std::vector<std::vector<int>> local_ports;

  [[nodiscard]] NetParams logical() const;
};

/// Throws PreconditionError on duplicate or out-of-range entries, or when the
/// logical network would have fewer than one cabinet or two routers per drawer.
[[nodiscard]] EmbeddingSpec build_embedding(const NetParams& host, std::vector<int> kappa, std::vector<int> lambda);
/// Full lambda.
[[nodiscard]] EmbeddingSpec build_embedding(const NetParams& host, std::vector<int> kappa);

[[nodiscard]] RouterAddr translate_addr(const EmbeddingSpec& spec, const RouterAddr& logical);

/// Host vector that follows the image of the logical path from `logical_src`.
[[nodiscard]] SourceVectorHeader translate_vector(const EmbeddingSpec& spec, const RouterAddr& logical_src,
                                                  const SourceVectorHeader& v);

/// Host links (both directions) of the embedded network.
[[nodiscard]] std::vector<LinkId> embedded_links(const EmbeddingSpec& spec);
[[nodiscard]] std::vector<LinkId> embedded_global_links(const EmbeddingSpec& spec);
/// Host ribbon bundles used by the embedded network.
[[nodiscard]] std::vector<RibbonBundle> embedded_wiring_plan(const EmbeddingSpec& spec);

/// One spec per part; parts must be pairwise disjoint.
[[nodiscard]] std::vector<EmbeddingSpec> partition_subnetworks(const NetParams& host,
                                                               const std::vector<std::vector<int>>& parts);

struct RemoveDrawerIndex {
  int index = 0;
};
struct RemoveCabinet {
  int cabinet = 0;
};
using Removal = std::variant<RemoveDrawerIndex, RemoveCabinet>;

struct MaintenanceView {
  EmbeddingSpec remaining;
  int offline_routers = 0;
};

[[nodiscard]] MaintenanceView maintenance_view(const NetParams& host, const Removal& removed);

/// Maps every launch onto the host. Broadcast headers are rejected; they
/// replicate over all host ports and have no image.
[[nodiscard]] Plan translate_plan(const EmbeddingSpec& spec, const Plan& logical);

/// CSV rows "table,i,k_i,ports" with ports written as "{a,b,...}".
[[nodiscard]] std::string table_csv(const EmbeddingSpec& spec);
/// Rebuilds the spec from table_csv output and checks every port row.
[[nodiscard]] EmbeddingSpec parse_table_csv(const std::string& text);

}  // namespace d3
