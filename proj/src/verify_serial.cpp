#include <random>

#include "d3/rng.hpp"
#include "verify_kernels.hpp"

namespace d3::verify {

DiameterResult diameter_serial(const NetParams& net) {
  const auto adj = adjacency(net);
  DiameterResult r;
  const int n = net.router_count();
  for (int s = 0; s < n; ++s) detail::merge(r, detail::bfs_from(adj, s), n);
  return r;
}

std::vector<PairCase> same_drawer_cases(const NetParams& net) {
  std::vector<PairCase> cases;
  const auto routers = all_routers(net);
  for (int c = 0; c < net.K; ++c) {
    for (int d = 0; d < net.M; ++d) {
      for (int p1 = 0; p1 < net.M; ++p1) {
        for (int p2 = p1 + 1; p2 < net.M; ++p2) {
          for (const auto& t1 : routers) {
            for (const auto& t2 : routers) {
              if (t1 == t2) continue;
              cases.push_back({{c, d, p1}, t1, {c, d, p2}, t2});
            }
          }
        }
      }
    }
  }
  return cases;
}

std::vector<PairCase> random_cross_drawer_cases(const NetParams& net, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::uint64_t>(net.router_count());
  std::vector<PairCase> cases;
  cases.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(cases.size()) < count) {
    PairCase c{addr_of(net, static_cast<int>(uniform_below(rng, n))), addr_of(net, static_cast<int>(uniform_below(rng, n))),
               addr_of(net, static_cast<int>(uniform_below(rng, n))), addr_of(net, static_cast<int>(uniform_below(rng, n)))};
    if (c.src1.c == c.src2.c && c.src1.d == c.src2.d) continue;
    if (c.dst1 == c.dst2) continue;
    cases.push_back(c);
  }
  return cases;
}

ConflictSweepResult conflict_sweep_serial(const NetParams& net, const std::vector<PairCase>& cases) {
  ConflictSweepResult r;
  for (const auto& c : cases) detail::tally(r, c, detail::evaluate(net, c));
  return r;
}

DisjointnessResult parallel_paths_serial(const NetParams& net) {
  DisjointnessResult r;
  const int vectors = net.K * net.M * net.M;
  for (int v = 0; v < vectors; ++v) r.shared_links += detail::shared_links_for(net, v);
  r.vectors = vectors;
  r.paths = static_cast<long long>(vectors) * net.router_count();
  return r;
}

PermutationSweepResult permutation_sweep_serial(const NetParams& net, int trials, std::uint64_t seed,
                                                QueueDiscipline discipline) {
  PermutationSweepResult r;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    detail::tally(r, net, s, detail::permutation_trial(net, s, discipline));
  }
  return r;
}

EmbeddingCheck check_embedding(const EmbeddingSpec& spec) {
  EmbeddingCheck out;
  const NetParams logical = spec.logical();
  const auto mapped = embedded_links(spec);

  std::vector<char> member(static_cast<std::size_t>(spec.host.router_count()), 0);
  for (const auto& r : all_routers(logical)) member[static_cast<std::size_t>(index_of(spec.host, translate_addr(spec, r)))] = 1;
  std::vector<LinkId> induced;
  for (const auto& l : all_links(spec.host)) {
    if (member[static_cast<std::size_t>(index_of(spec.host, l.from()))] &&
        member[static_cast<std::size_t>(index_of(spec.host, l.to(spec.host)))]) {
      induced.push_back(l);
    }
  }
  std::sort(induced.begin(), induced.end());
  out.logical_links = static_cast<long long>(mapped.size());
  out.induced_links = static_cast<long long>(induced.size());

  for (const auto& src : all_routers(logical)) {
    for (int v = 0; v < logical.K * logical.M * logical.M; ++v) {
      const int M = logical.M;
      const SourceVectorHeader h{false, 3, v / (M * M), v % M, (v / M) % M, false};
      const RouterAddr expect = translate_addr(spec, vector_destination(logical, src, h));
      const auto path = path_of(spec.host, translate_addr(spec, src), translate_vector(spec, src, h));
      if (path.back().to != expect) ++out.endpoint_mismatches;
    }
  }
  out.isomorphic = mapped == induced && out.endpoint_mismatches == 0;
  return out;
}

}  // namespace d3::verify
