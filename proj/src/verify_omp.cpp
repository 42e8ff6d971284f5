#include "verify_kernels.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace d3::verify {

int thread_count() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

DiameterResult diameter_parallel(const NetParams& net) {
  const auto adj = adjacency(net);
  const int n = net.router_count();
  std::vector<detail::SourceSummary> per_source(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 4)
  for (int s = 0; s < n; ++s) per_source[static_cast<std::size_t>(s)] = detail::bfs_from(adj, s);
  DiameterResult r;
  for (const auto& s : per_source) detail::merge(r, s, n);
  return r;
}

ConflictSweepResult conflict_sweep_parallel(const NetParams& net, const std::vector<PairCase>& cases) {
  const auto n = static_cast<long long>(cases.size());
  std::vector<detail::PairOutcome> outcomes(cases.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (long long i = 0; i < n; ++i) {
    outcomes[static_cast<std::size_t>(i)] = detail::evaluate(net, cases[static_cast<std::size_t>(i)]);
  }
  // tally in case order so the recorded examples match the serial sweep
  ConflictSweepResult r;
  for (std::size_t i = 0; i < cases.size(); ++i) detail::tally(r, cases[i], outcomes[i]);
  return r;
}

DisjointnessResult parallel_paths_parallel(const NetParams& net) {
  DisjointnessResult r;
  const int vectors = net.K * net.M * net.M;
  long long shared = 0;
#pragma omp parallel for reduction(+ : shared) schedule(dynamic, 1)
  for (int v = 0; v < vectors; ++v) shared += detail::shared_links_for(net, v);
  r.vectors = vectors;
  r.paths = static_cast<long long>(vectors) * net.router_count();
  r.shared_links = shared;
  return r;
}

PermutationSweepResult permutation_sweep_parallel(const NetParams& net, int trials, std::uint64_t seed,
                                                  QueueDiscipline discipline) {
  std::vector<detail::TrialOutcome> outcomes(static_cast<std::size_t>(std::max(trials, 0)));
#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < trials; ++t) {
    outcomes[static_cast<std::size_t>(t)] =
        detail::permutation_trial(net, seed + static_cast<std::uint64_t>(t), discipline);
  }
  PermutationSweepResult r;
  for (int t = 0; t < trials; ++t) {
    detail::tally(r, net, seed + static_cast<std::uint64_t>(t), outcomes[static_cast<std::size_t>(t)]);
  }
  return r;
}

}  // namespace d3::verify
