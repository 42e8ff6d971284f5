#include "doctest.h"

#include <algorithm>
#include <set>

#include "d3/embedding.hpp"
#include "d3/verify.hpp"
#include "oracle.hpp"

using namespace d3;

namespace {

struct PrintedRow {
  int i;
  std::vector<int> ports;
  bool consistent;
};

// rows as printed for host N = 9; three of them disagree with k_j - k_i
const std::vector<PrintedRow> first_block = {
    {0, {0, 1, 4, 7}, true}, {1, {3, 0, 6, 8}, false}, {2, {5, 6, 0, 3}, true}, {3, {3, 6, 5, 0}, false}};
const std::vector<PrintedRow> second_block = {{0, {0, 3, 4, 6, 7}, true},
                                              {1, {8, 0, 1, 3, 4}, false},
                                              {2, {5, 8, 0, 2, 3}, true},
                                              {3, {3, 6, 7, 0, 1}, true},
                                              {4, {2, 5, 6, 8, 0}, true}};

void check_block(const std::vector<int>& kappa, const std::vector<PrintedRow>& rows) {
  const auto spec = build_embedding(make_params(9, 4), kappa);
  for (const auto& row : rows) {
    const auto& generated = spec.global_ports[static_cast<std::size_t>(row.i)];
    CHECK(generated == oracle::port_row(kappa, row.i, 9));
    CHECK((generated == row.ports) == row.consistent);
  }
}

}  // namespace

TEST_CASE("global port tables against the printed rows") {
  check_block({1, 2, 5, 8}, first_block);
  check_block({0, 3, 4, 6, 7}, second_block);
}

TEST_CASE("errata rows as computed") {
  const auto a = build_embedding(make_params(9, 4), {1, 2, 5, 8});
  CHECK(a.global_ports[1] == std::vector<int>{8, 0, 3, 6});
  CHECK(a.global_ports[3] == std::vector<int>{2, 3, 6, 0});
  const auto b = build_embedding(make_params(9, 4), {0, 3, 4, 6, 7});
  CHECK(b.global_ports[1] == std::vector<int>{6, 0, 1, 3, 4});
}

TEST_CASE("embedding is an induced copy") {
  for (const auto& kappa : std::vector<std::vector<int>>{{1, 2, 5, 8}, {0, 3, 4, 6, 7}, {4}}) {
    const auto spec = build_embedding(make_params(9, 4), kappa);
    const auto r = verify::check_embedding(spec);
    CHECK(r.isomorphic);
    CHECK(r.endpoint_mismatches == 0);
    CHECK(r.logical_links == oracle::directed_edges(static_cast<int>(kappa.size()), 4));
  }
  // restricting drawers and routers too
  const auto spec = build_embedding(make_params(5, 6), {0, 2, 3}, {1, 2, 4, 5});
  CHECK(spec.logical() == make_params(3, 4));
  CHECK(spec.local_ports[1] == oracle::port_row({1, 2, 4, 5}, 1, 6));
  CHECK(verify::check_embedding(spec).isomorphic);
}

TEST_CASE("translated vectors follow the image of the logical path") {
  const auto spec = build_embedding(make_params(9, 6), {1, 2, 5, 8}, {0, 2, 3, 5});
  const auto logical = spec.logical();
  for (const auto& s : all_routers(logical)) {
    for (const auto& t : all_routers(logical)) {
      const auto v = translate_vector(spec, s, header_for(logical, s, t));
      const auto host_path = path_of(spec.host, translate_addr(spec, s), v);
      const auto logical_path = path_of(logical, s, header_for(logical, s, t));
      REQUIRE(host_path.size() == logical_path.size());
      for (std::size_t k = 0; k < host_path.size(); ++k)
        CHECK(host_path[k].to == translate_addr(spec, logical_path[k].to));
    }
  }
}

TEST_CASE("translated all-to-all matches the native run") {
  const auto spec = build_embedding(make_params(9, 4), {1, 2, 5, 8});
  const auto native = schedule_all_to_all(spec.logical());
  const auto plan = translate_plan(spec, native);
  CHECK(plan.schedule.data_rounds() == 64);
  CHECK(plan.schedule.delay_rounds() == 16);
  const auto m = run(spec.host, plan.schedule);
  CHECK(m.conflicts.empty());
  CHECK(verify_delivery(m, plan.expected).ok);
  CHECK_THROWS_AS(translate_plan(spec, schedule_broadcast(spec.logical(), {0, 0, 1}, 1)), PreconditionError);
}

TEST_CASE("wiring of an embedded network") {
  const auto spec = build_embedding(make_params(9, 4), {1, 2, 5, 8});
  std::set<LinkId> from_plan;
  for (const auto& b : embedded_wiring_plan(spec)) {
    CHECK(std::count(spec.kappa.begin(), spec.kappa.end(), b.cabinet) == 1);
    CHECK(std::count(spec.kappa.begin(), spec.kappa.end(), b.target_cabinet) == 1);
    for (const auto& l : flatten(b)) from_plan.insert(l);
  }
  const auto globals = embedded_global_links(spec);
  CHECK(std::set<LinkId>(globals.begin(), globals.end()) == from_plan);
}

TEST_CASE("partitions and maintenance") {
  const auto host = make_params(6, 4);
  const auto parts = partition_subnetworks(host, {{0, 1, 2}, {3, 5}});
  CHECK(parts.size() == 2);
  CHECK(parts[1].logical() == make_params(2, 4));
  CHECK_THROWS_AS(partition_subnetworks(host, {{0, 1}, {1, 2}}), PreconditionError);

  const auto drawer = maintenance_view(host, RemoveDrawerIndex{2});
  CHECK(drawer.offline_routers == host.K * (2 * host.M - 1));
  CHECK(drawer.remaining.logical() == make_params(6, 3));
  CHECK(verify::check_embedding(drawer.remaining).isomorphic);

  const auto cab = maintenance_view(host, RemoveCabinet{4});
  CHECK(cab.offline_routers == host.M * host.M);
  CHECK(cab.remaining.logical() == make_params(5, 4));
  CHECK(verify::check_embedding(cab.remaining).isomorphic);
}

TEST_CASE("table csv round trip") {
  const auto spec = build_embedding(make_params(9, 4), {1, 2, 5, 8});
  const auto text = table_csv(spec);
  CHECK(text.find("global,0,1,\"{0,1,4,7}\"") != std::string::npos);
  const auto back = parse_table_csv(text);
  CHECK(back.kappa == spec.kappa);
  CHECK(back.lambda == spec.lambda);
  CHECK(back.global_ports == spec.global_ports);
  std::string broken = text;
  broken.replace(broken.find("{0,1,4,7}"), 9, "{0,1,4,6}");
  CHECK_THROWS(parse_table_csv(broken));
}

TEST_CASE("embedding preconditions") {
  const auto host = make_params(9, 4);
  CHECK_THROWS_AS(build_embedding(host, {1, 1}), PreconditionError);
  CHECK_THROWS_AS(build_embedding(host, {9}), PreconditionError);
  CHECK_THROWS_AS(build_embedding(host, {}), PreconditionError);
  CHECK_THROWS_AS(build_embedding(host, {0}, {2}), PreconditionError);
}
