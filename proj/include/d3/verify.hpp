#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d3/embedding.hpp"
#include "d3/sim.hpp"
#include "d3/topology.hpp"

/// Exhaustive and sampled invariant sweeps. Every kernel has a serial
/// reference and an OpenMP version that must return identical results; the
/// OpenMP versions fall back to one thread when built without OpenMP.
namespace d3::verify {

struct DiameterResult {
  int max_distance = 0;
  long long pairs = 0;
  long long pairs_at_max = 0;
  bool connected = true;

  bool operator==(const DiameterResult&) const = default;
};

[[nodiscard]] DiameterResult diameter_serial(const NetParams& net);
[[nodiscard]] DiameterResult diameter_parallel(const NetParams& net);

/// One simultaneous pair of minimal-path transmissions.
struct PairCase {
  RouterAddr src1, dst1, src2, dst2;

  bool operator==(const PairCase&) const = default;
};

struct ConflictSweepResult {
  long long cases = 0;
  long long simulated_conflicts = 0;
  long long predicted_conflicts = 0;
  long long disagreements = 0;
  std::vector<PairCase> examples;  ///< first few disagreements

  bool operator==(const ConflictSweepResult&) const = default;
};

/// All unordered source pairs sharing a drawer, all ordered distinct
/// destination pairs.
[[nodiscard]] std::vector<PairCase> same_drawer_cases(const NetParams& net);
/// Source pairs from different drawers, distinct destinations.
[[nodiscard]] std::vector<PairCase> random_cross_drawer_cases(const NetParams& net, int count, std::uint64_t seed);

[[nodiscard]] ConflictSweepResult conflict_sweep_serial(const NetParams& net, const std::vector<PairCase>& cases);
[[nodiscard]] ConflictSweepResult conflict_sweep_parallel(const NetParams& net, const std::vector<PairCase>& cases);

struct DisjointnessResult {
  long long vectors = 0;
  long long paths = 0;
  long long shared_links = 0;  ///< (vector, step, link) triples used twice

  bool operator==(const DisjointnessResult&) const = default;
};

/// For every vector (3;g,p,d), the KM^2 simultaneous paths share no link.
[[nodiscard]] DisjointnessResult parallel_paths_serial(const NetParams& net);
[[nodiscard]] DisjointnessResult parallel_paths_parallel(const NetParams& net);

struct PermutationSweepResult {
  int trials = 0;
  int delivered = 0;
  int max_completion = 0;
  int over_bound = 0;  ///< runs finishing after M + 4
  std::uint64_t worst_seed = 0;
  long long wait_steps = 0;

  bool operator==(const PermutationSweepResult&) const = default;
};

[[nodiscard]] PermutationSweepResult permutation_sweep_serial(const NetParams& net, int trials, std::uint64_t seed,
                                                              QueueDiscipline discipline);
[[nodiscard]] PermutationSweepResult permutation_sweep_parallel(const NetParams& net, int trials,
                                                                std::uint64_t seed, QueueDiscipline discipline);

struct EmbeddingCheck {
  bool isomorphic = false;
  long long logical_links = 0;
  long long induced_links = 0;
  long long endpoint_mismatches = 0;  ///< (source, vector) pairs whose host path misses the image
};

/// Mapped logical edge set == induced host edge set, and every translated
/// vector lands on the translated logical destination.
[[nodiscard]] EmbeddingCheck check_embedding(const EmbeddingSpec& spec);

[[nodiscard]] int thread_count();

}  // namespace d3::verify
