// Serial vs OpenMP timings for the verification sweeps.
// usage: bench_verify [K M] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "d3/verify.hpp"

using namespace d3;
using clock_type = std::chrono::steady_clock;

namespace {

double best_ms(const std::function<void()>& f, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = clock_type::now();
    f();
    const double ms = std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

template <class Serial, class Parallel>
void compare(const char* name, Serial serial, Parallel parallel, int repeats) {
  auto a = serial();
  auto b = parallel();
  const double ts = best_ms([&] { a = serial(); }, repeats);
  const double tp = best_ms([&] { b = parallel(); }, repeats);
  std::printf("%-12s serial %9.2f ms  omp %9.2f ms  x%5.2f  %s\n", name, ts, tp, ts / tp,
              a == b ? "same" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int K = argc > 2 ? std::atoi(argv[1]) : 3;
  const int M = argc > 2 ? std::atoi(argv[2]) : 4;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;
  const auto net = make_params(K, M);
  std::printf("D3(%d,%d): %d routers, %d threads\n", K, M, net.router_count(), verify::thread_count());

  compare("diameter", [&] { return verify::diameter_serial(net); }, [&] { return verify::diameter_parallel(net); },
          repeats);
  const auto cases = verify::same_drawer_cases(net);
  compare("conflict", [&] { return verify::conflict_sweep_serial(net, cases); },
          [&] { return verify::conflict_sweep_parallel(net, cases); }, repeats);
  compare("parallel", [&] { return verify::parallel_paths_serial(net); },
          [&] { return verify::parallel_paths_parallel(net); }, repeats);
  if (net.primitives_ok) {
    compare("perm", [&] { return verify::permutation_sweep_serial(net, 200, 1, QueueDiscipline::lifo); },
            [&] { return verify::permutation_sweep_parallel(net, 200, 1, QueueDiscipline::lifo); }, repeats);
  }
  return 0;
}
