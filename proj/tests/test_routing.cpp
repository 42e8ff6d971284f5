#include "doctest.h"

#include <random>
#include <set>

#include "d3/routing.hpp"
#include "oracle.hpp"

using namespace d3;

namespace {

oracle::R raw(const RouterAddr& a) { return {a.c, a.d, a.p}; }

std::vector<oracle::R> walk(const std::vector<Hop>& path) {
  std::vector<oracle::R> out;
  for (const auto& h : path) out.push_back(raw(h.to));
  return out;
}

}  // namespace

TEST_CASE("minimal header example") {
  const auto net = make_params(2, 4);
  const auto h = header_for(net, {0, 0, 0}, {1, 2, 3});
  CHECK(h == SourceVectorHeader{false, 3, 1, 3, 2, false});
  const auto path = path_of(net, {0, 0, 0}, h);
  REQUIRE(path.size() == 3);
  CHECK(path.back().to == RouterAddr{1, 2, 3});
}

TEST_CASE("every minimal path follows the oracle walk") {
  for (auto [K, M] : {std::pair{2, 4}, {3, 3}, {1, 5}}) {
    const auto net = make_params(K, M);
    for (const auto& s : all_routers(net)) {
      for (const auto& t : all_routers(net)) {
        const auto h = header_for(net, s, t);
        const auto v = oracle::minimal_vector(K, M, raw(s), raw(t));
        CHECK(h.gamma == v[0]);
        CHECK(h.pi == v[1]);
        CHECK(h.delta == v[2]);
        const auto path = path_of(net, s, h);
        CHECK(walk(path) == oracle::lgl_walk(K, M, raw(s), v[0], v[1], v[2]));
        CHECK(path.back().to == t);
        CHECK(vector_destination(net, s, h) == t);
      }
    }
  }
}

TEST_CASE("self-send takes three timed steps") {
  const auto net = make_params(2, 4);
  const RouterAddr fixed{0, 1, 1};
  const auto h = header_for(net, fixed, fixed);
  CHECK(h == SourceVectorHeader{false, 3, 0, 0, 0, false});
  const auto path = path_of(net, fixed, h);
  REQUIRE(path.size() == 3);
  CHECK(path[0].kind == HopKind::hold);
  CHECK(path[1].kind == HopKind::self_swap);
  CHECK(path[2].kind == HopKind::hold);

  const RouterAddr other{0, 1, 2};
  const auto h2 = header_for(net, other, other);
  CHECK(h2 == SourceVectorHeader{false, 3, 0, 1, 3, false});  // (3; 0, p-d, d-p)
  const auto p2 = path_of(net, other, h2);
  CHECK(p2[0].kind == HopKind::local);
  CHECK(p2[1].kind == HopKind::self_swap);
  CHECK(p2[2].kind == HopKind::local);
  CHECK(p2.back().to == other);
}

TEST_CASE("glgl header jumps to the destination cabinet first") {
  const auto net = make_params(3, 4);
  for (const auto& s : all_routers(net)) {
    for (const auto& t : all_routers(net)) {
      const auto h = glgl_header_for(net, s, t);
      CHECK(h.four_hop);
      const auto path = path_of(net, s, h);
      REQUIRE(path.size() == 4);
      CHECK(path[0].to.c == t.c);
      CHECK(path.back().to == t);
    }
  }
}

TEST_CASE("port tables") {
  const auto t = port_tables(make_params(3, 5));
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) CHECK(t.local[r][c] == oracle::md(r - c, 5));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(t.global[r][c] == oracle::md(r - c, 3));
}

TEST_CASE("destination routing traces the minimal path") {
  const auto net = make_params(2, 4);
  for (const auto& s : all_routers(net)) {
    for (const auto& t : all_routers(net)) {
      const auto dest = destination_path(net, destination_header(s, t));
      CHECK(dest == path_of(net, s, header_for(net, s, t)));
    }
  }
}

TEST_CASE("deflected packets take exactly five steps for every port choice") {
  const auto net = make_params(2, 4);
  for (const auto& s : all_routers(net)) {
    for (const auto& t : all_routers(net)) {
      for (int D = 0; D < net.M; ++D) {
        for (int C = 0; C < net.K; ++C) {
          const auto path = destination_path(net, destination_header(s, t, 5, {D, C}));
          REQUIRE(path.size() == 5);
          CHECK(path.back().to == t);
          CHECK(path == deflect_path(net, s, t, {D, C}, 5));
        }
      }
    }
  }
}

TEST_CASE("fixed-C glgl paths between two drawers share no global link") {
  const auto net = make_params(2, 4);
  std::mt19937_64 rng(3);
  for (int shift = 0; shift < net.M; ++shift) {
    std::set<LinkId> used;
    for (int p = 0; p < net.M; ++p) {
      const RouterAddr s{0, 1, p};
      const RouterAddr t{1, 2, oracle::md(p + shift, net.M)};
      const auto choice = choose_deflection(net, FixedCPolicy{}, s, t, rng);
      CHECK(choice == Deflection{0, 1});
      const auto path = destination_path(net, destination_header(s, t, 4, choice));
      REQUIRE(path.size() == 4);
      CHECK(path.back().to == t);
      for (const auto& h : path)
        if (h.kind == HopKind::global) CHECK(used.insert(*h.link()).second);
    }
  }
}

TEST_CASE("random deflection is seeded") {
  const auto net = make_params(3, 4);
  std::mt19937_64 a(42);
  std::mt19937_64 b(42);
  for (int i = 0; i < 50; ++i) {
    const auto x = choose_deflection(net, RandomPolicy{42}, {0, 0, 0}, {1, 1, 1}, a);
    const auto y = choose_deflection(net, RandomPolicy{42}, {0, 0, 0}, {1, 1, 1}, b);
    CHECK(x == y);
    CHECK(x.local_port >= 0);
    CHECK(x.local_port < net.M);
    CHECK(x.global_port < net.K);
  }
  CHECK_THROWS_AS(choose_deflection(net, SuppliedPolicy{4, 0}, {0, 0, 0}, {1, 1, 1}, a), PreconditionError);
}

TEST_CASE("random vectors land where the arithmetic says") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int K = 1 + static_cast<int>(rng() % 5);
    const int M = 2 + static_cast<int>(rng() % 5);
    const auto net = make_params(K, M);
    const RouterAddr s{static_cast<int>(rng() % K), static_cast<int>(rng() % M), static_cast<int>(rng() % M)};
    const int g = static_cast<int>(rng() % K);
    const int pi = static_cast<int>(rng() % M);
    const int delta = static_cast<int>(rng() % M);
    const auto path = path_of(net, s, {false, 3, g, pi, delta, false});
    CHECK(walk(path) == oracle::lgl_walk(K, M, raw(s), g, pi, delta));
    for (const auto& h : path) {
      if (auto l = h.link()) CHECK(oracle::adjacent(raw(l->from()), raw(l->to(net))));
    }
  }
}

TEST_CASE("header literals") {
  const RouterAddr at{0, 1, 2};
  const auto sv = parse_header("sv:1,3,0,0,0", at);
  CHECK(is_broadcast(sv));
  CHECK(counter(sv) == 3);
  CHECK(to_string(sv) == "sv:1,3,0,0,0");
  const auto dh = parse_header("dh:5,1.2.3", at);
  CHECK(counter(dh) == 5);
  CHECK(std::get<DestinationHeader>(dh).loc == at);
  CHECK(to_string(dh) == "dh:5,1.2.3");
  CHECK_THROWS(parse_header("xx:1", at));
  CHECK_THROWS(parse_header("sv:1,3,0", at));
}

TEST_CASE("stepping an exhausted header is an error") {
  const auto net = make_params(2, 4);
  CHECK_THROWS_AS(step_source_vector(net, {0, 0, 0}, {false, 0, 0, 0, 0, false}), PreconditionError);
  CHECK_THROWS_AS(step_source_vector(net, {0, 0, 0}, {false, 3, 5, 0, 0, false}), PreconditionError);
  CHECK_THROWS_AS(destination_header({0, 0, 0}, {1, 1, 1}, 6), PreconditionError);
}
