#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "agility/graph.hpp"
#include "agility/metrics.hpp"
#include "test_helpers.hpp"

using namespace agility;

TEST_CASE("dynamic build on the two-round worked example") {
  auto trace = testutil::make_trace(
      {"v.test"},
      {{{"10.0.0.1", "10.0.0.254"}, {"10.0.0.1", "10.0.0.2", "10.0.0.254"}}});

  auto after_round_1 = build_graph(truncate_trace(trace, 1));
  CHECK(after_round_1.record_vertices() ==
        std::vector<std::string>{"10.0.0.1", "10.0.0.254"});
  CHECK(after_round_1.edges().size() == 2);

  auto learned = build_graph(trace);
  CHECK(learned.record_vertices() ==
        std::vector<std::string>{"10.0.0.1", "10.0.0.254", "10.0.0.2"});
  CHECK(learned.record_births() == std::vector<int>{1, 1, 2});  // B_A = (i, i, i+1)
  CHECK(learned.edges().size() == 3);
  CHECK(learned.domain_vertices() == std::vector<std::string>{"v.test"});
}

TEST_CASE("an all-empty round changes nothing") {
  auto with_gap = testutil::make_trace(
      {"a.test", "b.test"},
      {{{"192.0.2.1"}, {}, {"192.0.2.1"}}, {{"192.0.2.2"}, {}, {"192.0.2.2"}}});
  auto g = build_graph(with_gap);
  CHECK(g.record_vertices().size() == 2);
  CHECK(g.edges().size() == 2);
  for (int b : g.record_births()) CHECK(b == 1);
}

TEST_CASE("two domains sharing an address across rounds") {
  auto trace = testutil::make_trace(
      {"a.test", "b.test"}, {{{"192.0.2.9"}, {"192.0.2.9"}}, {{}, {"192.0.2.9"}}});
  auto g = build_graph(trace);
  CHECK(g.record_vertices().size() == 1);
  CHECK(g.domain_vertices().size() == 2);
  REQUIRE(g.edges().size() == 2);
  CHECK(g.edges()[0].birth == 1);
  CHECK(g.edges()[1].birth == 2);
  CHECK(g.record_births() == std::vector<int>{1});
  CHECK(g.domain_births() == std::vector<int>{1, 2});
}

TEST_CASE("domains that never resolve contribute no vertices") {
  auto trace = testutil::make_trace({"live.test", "dead.test"},
                                    {{{"192.0.2.1"}}, {{}}});
  auto g = build_graph(trace);
  CHECK(g.domain_vertices() == std::vector<std::string>{"live.test"});
}

TEST_CASE("prune_isolated is idempotent and keeps connected vertices") {
  auto trace = testutil::random_trace(42, 10, 20);
  auto g = build_graph(trace);
  auto pruned = prune_isolated(g);
  CHECK(pruned == g);  // built graphs never carry isolated vertices
  CHECK(prune_isolated(pruned) == pruned);
}

TEST_CASE("density formula and degenerate cases") {
  // |V_D| = 5, |V_R| = 10, |E| = 20 -> 0.4
  BipartiteDnsGraph g(RecordType::A);
  for (int d = 0; d < 5; ++d) {
    for (int r = 0; r < 4; ++r) {
      g.observe("d" + std::to_string(d) + ".test",
                "198.51.100." + std::to_string((d * 2 + r) % 10), 1);
    }
  }
  REQUIRE(g.domain_vertices().size() == 5);
  REQUIRE(g.record_vertices().size() == 10);
  REQUIRE(g.edges().size() == 20);
  CHECK(density(g) == Rational(2, 5));

  SUBCASE("complete bipartite graph has density 1") {
    BipartiteDnsGraph k(RecordType::A);
    for (int d = 0; d < 3; ++d) {
      for (int r = 0; r < 4; ++r) {
        k.observe("d" + std::to_string(d) + ".test", "192.0.2." + std::to_string(r), 1);
      }
    }
    CHECK(density(k) == Rational(1));
  }
  SUBCASE("empty graph has density 0") {
    CHECK(density(BipartiteDnsGraph(RecordType::A)) == Rational(0));
  }
}

TEST_CASE("descriptive stats") {
  BipartiteDnsGraph g(RecordType::A);
  g.observe("one.test", "192.0.2.1", 1);
  auto s = descriptive_stats(g);
  CHECK(s.vertices == 2);
  CHECK(s.edges == 1);
  CHECK(s.density == Rational(1));
  CHECK(s.domain_count == 1);
  CHECK(s.record_count == 1);
  REQUIRE(s.domain_record_share.has_value());
  CHECK(*s.domain_record_share == Rational(100));
}

TEST_CASE("build determinism") {
  auto t1 = testutil::random_trace(7, 15, 30);
  auto t2 = testutil::random_trace(7, 15, 30);
  CHECK(build_graph(t1) == build_graph(t2));
}

TEST_CASE("graph invariants over random traces") {
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    auto trace = testutil::random_trace(seed, 10, 25);
    auto g = build_graph(trace);

    // |V_R| = |B_R| and births within 1..q
    CHECK(g.record_vertices().size() == g.record_births().size());
    for (int b : g.record_births()) {
      CHECK(b >= 1);
      CHECK(b <= trace.rounds);
    }
    // bipartite: every edge joins a domain index and a record index
    for (const auto& e : g.edges()) {
      CHECK(e.domain < g.domain_vertices().size());
      CHECK(e.record < g.record_vertices().size());
    }
    // every record vertex has an incident edge born with it
    for (std::uint32_t r = 0; r < g.record_vertices().size(); ++r) {
      bool found = false;
      for (const auto& e : g.edges()) {
        if (e.record == r && e.birth == g.record_births()[r]) found = true;
      }
      CHECK(found);
    }
    // births non-decreasing along insertion order
    for (std::size_t i = 1; i < g.record_births().size(); ++i) {
      CHECK(g.record_births()[i] >= g.record_births()[i - 1]);
    }
    for (std::size_t i = 1; i < g.edges().size(); ++i) {
      CHECK(g.edges()[i].birth >= g.edges()[i - 1].birth);
    }
    // domain degree equals the domain's union size from metrics
    for (std::uint32_t d = 0; d < g.domain_vertices().size(); ++d) {
      auto s = metric_series(trace, g.domain_vertices()[d]);
      CHECK(static_cast<std::int64_t>(g.degree_of_domain(d)) == s.union_size);
      CHECK(s.cumulative.back() == s.union_size);
    }
    // density in [0, 1] when both sides are non-empty
    if (!g.domain_vertices().empty() && !g.record_vertices().empty()) {
      CHECK(density(g) >= Rational(0));
      CHECK(density(g) <= Rational(1));
    }
  }
}

TEST_CASE("CSV export and import reconstruct the graph exactly") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    auto g = build_graph(testutil::random_trace(seed, 8, 15));
    std::stringstream vcsv, ecsv;
    write_graph_vertices_csv(vcsv, g);
    write_graph_edges_csv(ecsv, g);
    auto back = read_graph_csv(vcsv, ecsv, g.rtype());
    CHECK(back == g);
  }
}

TEST_CASE("graph CSV import detects tampering") {
  auto g = build_graph(testutil::make_trace(
      {"a.test"}, {{{"192.0.2.1"}, {"192.0.2.2"}}}));
  std::stringstream vcsv, ecsv;
  write_graph_vertices_csv(vcsv, g);
  write_graph_edges_csv(ecsv, g);

  SUBCASE("bad header") {
    std::stringstream badv("nope\n"), e2(ecsv.str());
    CHECK_THROWS_AS(read_graph_csv(badv, e2, RecordType::A), ParseError);
  }
  SUBCASE("vertex birth mismatch") {
    std::string v = vcsv.str();
    v.replace(v.find("R,1"), 3, "R,9");
    std::stringstream v2(v), e2(ecsv.str());
    CHECK_THROWS_AS(read_graph_csv(v2, e2, RecordType::A), DataError);
  }
}
