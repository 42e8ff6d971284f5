#pragma once

// Per-item work shared by the serial and OpenMP sweeps.

#include <algorithm>
#include <deque>
#include <set>

#include "d3/primitives.hpp"
#include "d3/verify.hpp"

namespace d3::verify::detail {

struct SourceSummary {
  int max_distance = 0;
  long long at_max = 0;
  bool connected = true;
};

inline SourceSummary bfs_from(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> q{src};
  dist[static_cast<std::size_t>(src)] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(v);
      }
    }
  }
  SourceSummary s;
  for (int x : dist) {
    if (x < 0) {
      s.connected = false;
    } else if (x > s.max_distance) {
      s.max_distance = x;
      s.at_max = 1;
    } else if (x == s.max_distance) {
      ++s.at_max;
    }
  }
  return s;
}

inline void merge(DiameterResult& r, const SourceSummary& s, long long pairs) {
  r.pairs += pairs;
  r.connected = r.connected && s.connected;
  if (s.max_distance > r.max_distance) {
    r.max_distance = s.max_distance;
    r.pairs_at_max = s.at_max;
  } else if (s.max_distance == r.max_distance) {
    r.pairs_at_max += s.at_max;
  }
}

struct PairOutcome {
  bool simulated = false;
  bool predicted = false;
};

inline PairOutcome evaluate(const NetParams& net, const PairCase& c) {
  return {simulated_pair_conflict(net, c.src1, c.dst1, c.src2, c.dst2),
          conflict_predicate(c.src1, c.dst1, c.src2, c.dst2)};
}

inline void tally(ConflictSweepResult& r, const PairCase& c, const PairOutcome& o) {
  ++r.cases;
  r.simulated_conflicts += o.simulated ? 1 : 0;
  r.predicted_conflicts += o.predicted ? 1 : 0;
  if (o.simulated != o.predicted) {
    ++r.disagreements;
    if (r.examples.size() < 8) r.examples.push_back(c);
  }
}

/// Links used twice at the same step by the paths of one vector.
inline long long shared_links_for(const NetParams& net, int vector_index) {
  const int M = net.M;
  const SourceVectorHeader h{false, 3, vector_index / (M * M), vector_index % M, (vector_index / M) % M, false};
  std::set<std::pair<int, LinkId>> used;
  long long shared = 0;
  for (const auto& src : all_routers(net)) {
    int step = 0;
    for (const auto& hop : path_of(net, src, h)) {
      ++step;
      if (auto link = hop.link()) {
        if (!used.insert({step, *link}).second) ++shared;
      }
    }
  }
  return shared;
}

struct TrialOutcome {
  bool delivered = false;
  int completion = 0;
  long long waits = 0;
};

inline TrialOutcome permutation_trial(const NetParams& net, std::uint64_t seed, QueueDiscipline discipline) {
  const auto perm = random_permutation(net, seed);
  const auto plan = schedule_permutation(net, perm);
  SimConfig config;
  config.mode = SimMode::queued;
  config.discipline = discipline;
  config.seed = seed;
  const auto m = run(net, plan.schedule, config);
  return {verify_delivery(m, plan.expected).ok, m.total_steps, m.wait_steps};
}

inline void tally(PermutationSweepResult& r, const NetParams& net, std::uint64_t seed, const TrialOutcome& t) {
  ++r.trials;
  r.delivered += t.delivered ? 1 : 0;
  r.wait_steps += t.waits;
  if (t.completion > net.M + 4) ++r.over_bound;
  if (t.completion > r.max_completion) {
    r.max_completion = t.completion;
    r.worst_seed = seed;
  }
}

}  // namespace d3::verify::detail
