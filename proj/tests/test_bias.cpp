#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <iostream>
#include <sstream>

#include "agility/bias.hpp"
#include "test_helpers.hpp"

using namespace agility;

namespace {

BiasStep stats_of(const BipartiteDnsGraph& g, int index) {
  auto s = descriptive_stats(g);
  return {index, s.domain_count, s.record_count, s.edges, s.density};
}

bool is_subgraph(const BipartiteDnsGraph& small, const BipartiteDnsGraph& big) {
  for (const auto& d : small.domain_vertices()) {
    if (!big.domain_index(d)) return false;
  }
  for (const auto& r : small.record_vertices()) {
    if (!big.record_index(r)) return false;
  }
  for (const auto& e : small.edges()) {
    const auto& d = small.domain_vertices()[e.domain];
    const auto& r = small.record_vertices()[e.record];
    bool found = false;
    for (const auto& be : big.edges()) {
      if (big.domain_vertices()[be.domain] == d &&
          big.record_vertices()[be.record] == r) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("learning snapshots equal from-scratch builds on truncated traces") {
  for (std::uint64_t seed = 400; seed < 412; ++seed) {
    auto trace = testutil::random_trace(seed, 8, 20);
    auto learned = build_graph(trace);
    auto curve = learning_bias(learned, trace.rounds);
    REQUIRE(curve.steps.size() == static_cast<std::size_t>(trace.rounds));
    for (int j = 1; j <= trace.rounds; ++j) {
      auto snapshot = learning_snapshot(learned, j);
      auto rebuilt = build_graph(truncate_trace(trace, j));
      CHECK(snapshot == rebuilt);
      CHECK(curve.steps[static_cast<std::size_t>(j - 1)] == stats_of(rebuilt, j));
    }
  }
}

TEST_CASE("learning curve: nestedness and the j = q anchor") {
  auto trace = testutil::random_trace(55, 10, 30);
  auto learned = build_graph(trace);
  auto curve = learning_bias(learned, trace.rounds);

  BipartiteDnsGraph prev(trace.rtype);
  for (int j = 1; j <= trace.rounds; ++j) {
    auto cur = learning_snapshot(learned, j);
    CHECK(is_subgraph(prev, cur));
    // counts only grow
    const auto& step = curve.steps[static_cast<std::size_t>(j - 1)];
    if (j > 1) {
      const auto& before = curve.steps[static_cast<std::size_t>(j - 2)];
      CHECK(step.domain_count >= before.domain_count);
      CHECK(step.record_count >= before.record_count);
      CHECK(step.edge_count >= before.edge_count);
    }
    // no degree-zero vertices in any recorded graph
    for (std::uint32_t d = 0; d < cur.domain_vertices().size(); ++d) {
      CHECK(cur.degree_of_domain(d) >= 1);
    }
    for (std::uint32_t r = 0; r < cur.record_vertices().size(); ++r) {
      CHECK(cur.degree_of_record(r) >= 1);
    }
    prev = std::move(cur);
  }
  CHECK(prev == learned);
  CHECK(curve.steps.back() == stats_of(learned, trace.rounds));
}

TEST_CASE("strict vertex-birth mode keeps a late edge between old vertices") {
  // a.test discovers both addresses in round 1; b.test connects to one of
  // them only in round 3. Vertex-birth-only removal keeps that edge at
  // j = 1, the default mode does not.
  auto trace = testutil::make_trace(
      {"a.test", "b.test"},
      {{{"192.0.2.1", "192.0.2.2"}, {}, {}},
       {{"192.0.2.3"}, {}, {"192.0.2.1"}}});
  auto learned = build_graph(trace);

  auto strict_1 = learning_snapshot(learned, 1, true);
  auto exact_1 = learning_snapshot(learned, 1, false);
  CHECK(strict_1.edges().size() == 4);  // late edge retained
  CHECK(exact_1.edges().size() == 3);
  CHECK(exact_1 == build_graph(truncate_trace(trace, 1)));

  auto strict_curve = learning_bias(learned, trace.rounds, true);
  CHECK(strict_curve.steps[0].edge_count == 4);
  CHECK(strict_curve.steps.back() == stats_of(learned, trace.rounds));
}

TEST_CASE("learning bias validates bookkeeping range") {
  auto learned = build_graph(testutil::make_trace({"a.test"}, {{{"192.0.2.1"},
                                                               {"192.0.2.2"}}}));
  CHECK_THROWS_AS(learning_bias(learned, 1), DataError);   // birth 2 > q = 1
  CHECK_THROWS_AS(learning_bias(learned, 0), ConfigError);
}

TEST_CASE("sampling bias on a hand-enumerated five-domain fixture") {
  // one agile domain with five unique cumulative values, four static ones
  auto trace = testutil::make_trace(
      {"agile.test", "s1.test", "s2.test", "s3.test", "s4.test"},
      {{{"192.0.2.10"},
        {"192.0.2.10", "192.0.2.11"},
        {"192.0.2.11", "192.0.2.12"},
        {"192.0.2.13"},
        {"192.0.2.14"}},
       {{"192.0.2.1"}, {"192.0.2.1"}, {"192.0.2.1"}, {"192.0.2.1"}, {"192.0.2.1"}},
       {{"192.0.2.2"}, {"192.0.2.2"}, {"192.0.2.2"}, {"192.0.2.2"}, {"192.0.2.2"}},
       {{"192.0.2.3"}, {"192.0.2.3"}, {"192.0.2.3"}, {"192.0.2.3"}, {"192.0.2.3"}},
       {{"192.0.2.1"}, {"192.0.2.1"}, {"192.0.2.1"}, {"192.0.2.1"}, {"192.0.2.1"}}});
  auto learned = build_graph(trace);
  auto series = all_metric_series(trace);
  auto curve = sampling_bias(learned, series);

  REQUIRE(curve.steps.size() == 5);  // tau_m = 5
  // tau = 1: everything passes
  CHECK(curve.steps[0] == stats_of(learned, 1));
  // tau = 2: the four static domains go; 192.0.2.1 serves two static
  // domains and 192.0.2.2/.3 one each -- all of them leave with their
  // domains, the agile domain's five addresses stay
  CHECK(curve.steps[1].domain_count == 1);
  CHECK(curve.steps[1].record_count == 5);
  CHECK(curve.steps[1].edge_count == 5);
  auto snap2 = sampling_snapshot(learned, series, 2);
  CHECK(snap2.domain_vertices() == std::vector<std::string>{"agile.test"});
  // tau = 5: still just the agile domain; tau_m anchor
  CHECK(curve.steps[4].domain_count == 1);
}

TEST_CASE("all-static sample collapses at tau = 2") {
  auto trace = testutil::make_trace(
      {"x.test", "y.test"},
      {{{"192.0.2.1"}, {"192.0.2.1"}}, {{"192.0.2.2"}, {"192.0.2.2"}}});
  auto learned = build_graph(trace);
  auto series = all_metric_series(trace);
  auto curve = sampling_bias(learned, series);
  REQUIRE(curve.steps.size() == 1);  // tau_m = 1: only the anchor step
  CHECK(curve.steps[0].domain_count == 2);
  // no domain satisfies COND(2): the graph empties
  auto snap = sampling_snapshot(learned, series, 2);
  CHECK(snap.domain_vertices().empty());
  CHECK(snap.record_vertices().empty());
  CHECK(snap.edges().empty());

  // force a tau = 2 step by making one domain agile
  auto trace2 = testutil::make_trace(
      {"x.test", "y.test"},
      {{{"192.0.2.1"}, {"192.0.2.1"}}, {{"192.0.2.2"}, {"192.0.2.3"}}});
  auto curve2 = sampling_bias(build_graph(trace2), all_metric_series(trace2));
  REQUIRE(curve2.steps.size() == 2);
  CHECK(curve2.steps[1].domain_count == 1);
  CHECK(curve2.steps[1].record_count == 2);
}

TEST_CASE("sampling curve: nestedness, anchors, no isolated vertices") {
  for (std::uint64_t seed = 500; seed < 510; ++seed) {
    auto trace = testutil::random_trace(seed, 10, 30);
    auto learned = build_graph(trace);
    auto series = all_metric_series(trace);
    auto curve = sampling_bias(learned, series);
    REQUIRE(!curve.steps.empty());
    CHECK(curve.steps.front() == stats_of(learned, 1));

    BipartiteDnsGraph prev = learned;
    for (const auto& step : curve.steps) {
      auto cur = sampling_snapshot(learned, series, step.index);
      CHECK(is_subgraph(cur, prev));
      CHECK(step == stats_of(cur, step.index));
      for (std::uint32_t d = 0; d < cur.domain_vertices().size(); ++d) {
        CHECK(cur.degree_of_domain(d) >= 1);
      }
      for (std::uint32_t r = 0; r < cur.record_vertices().size(); ++r) {
        CHECK(cur.degree_of_record(r) >= 1);
      }
      prev = std::move(cur);
    }
    // domain counts non-increasing in tau
    for (std::size_t i = 1; i < curve.steps.size(); ++i) {
      CHECK(curve.steps[i].domain_count <= curve.steps[i - 1].domain_count);
    }
  }
}

TEST_CASE("sampling bias requires a series per domain vertex") {
  auto trace = testutil::make_trace({"a.test"}, {{{"192.0.2.1"}}});
  auto learned = build_graph(trace);
  CHECK_THROWS_AS(sampling_bias(learned, {}), DataError);
}

// The claim that COND(tau) sweeps equal degree-ordered removal is recorded
// in the literature but does not hold when several new addresses arrive in
// one round (degree |R| can exceed the number of unique cumulative values).
// This search reports divergences without failing.
TEST_CASE("degree vs unique-value divergence search (reporting only)") {
  int divergences = 0;
  for (std::uint64_t seed = 600; seed < 640; ++seed) {
    auto trace = testutil::random_trace(seed, 8, 15);
    auto learned = build_graph(trace);
    for (std::uint32_t d = 0; d < learned.domain_vertices().size(); ++d) {
      auto s = metric_series(trace, learned.domain_vertices()[d]);
      if (static_cast<std::int64_t>(learned.degree_of_domain(d)) !=
          s.unique_cumulative_values) {
        ++divergences;
      }
    }
  }
  MESSAGE("domains where degree != unique cumulative values: ", divergences);
  CHECK(true);  // informational
}

TEST_CASE("bias CSV format") {
  auto trace = testutil::make_trace({"a.test"}, {{{"192.0.2.1"}, {"192.0.2.2"}}});
  auto curve = learning_bias(build_graph(trace), trace.rounds);
  std::stringstream out;
  write_bias_csv(out, curve);
  CHECK(out.str() ==
        "step,domains,records,edges,density\n"
        "1,1,1,1,1.000000\n"
        "2,1,2,2,1.000000\n");
}
