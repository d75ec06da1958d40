#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "agility/trace.hpp"
#include "agility/trace_io.hpp"
#include "test_helpers.hpp"

using namespace agility;

TEST_CASE("aggregate_domain truncates to the two highest labels") {
  CHECK(aggregate_domain("download.gfwl.xboxlive.com") == "xboxlive.com");
  CHECK(aggregate_domain("xboxlive.com") == "xboxlive.com");
  CHECK(aggregate_domain("a.b.c.d.example.org") == "example.org");
  CHECK(aggregate_domain("localhost") == "localhost");
  CHECK(aggregate_domain("example.org.") == "example.org");
}

TEST_CASE("aggregate_domain rejects malformed names") {
  CHECK_THROWS_AS(aggregate_domain(""), DataError);
  CHECK_THROWS_AS(aggregate_domain("a..b"), DataError);
  CHECK_THROWS_AS(aggregate_domain(std::string(64, 'x') + ".com"), DataError);
}

TEST_CASE("address canonicalization") {
  CHECK(canonicalize_address("10.0.0.1", RecordType::A) == "10.0.0.1");
  CHECK(canonicalize_address("2001:DB8:0:0:0:0:0:1", RecordType::AAAA) == "2001:db8::1");
  CHECK(!canonicalize_address("10.0.0.1", RecordType::AAAA).has_value());
  CHECK(!canonicalize_address("2001:db8::1", RecordType::A).has_value());
  CHECK(!canonicalize_address("not-an-address", RecordType::A).has_value());

  SUBCASE("idempotent on canonical forms") {
    for (const char* a : {"10.0.0.1", "203.0.113.255", "192.0.2.0"}) {
      auto c = canonicalize_address(a, RecordType::A);
      REQUIRE(c.has_value());
      CHECK(canonicalize_address(*c, RecordType::A) == *c);
    }
    for (const char* a : {"2001:db8::1", "::1", "2001:db8:ffff::3:1"}) {
      auto c = canonicalize_address(a, RecordType::AAAA);
      REQUIRE(c.has_value());
      CHECK(canonicalize_address(*c, RecordType::AAAA) == *c);
    }
  }
}

TEST_CASE("record sets deduplicate and stay sorted") {
  RecordSet s(RecordType::A);
  s.insert("10.0.0.254");
  s.insert("10.0.0.1");
  s.insert("10.0.0.254");
  CHECK(s.size() == 2);
  CHECK(s.records() == std::vector<std::string>{"10.0.0.1", "10.0.0.254"});
  CHECK_THROWS_AS(s.insert("bogus"), DataError);
}

TEST_CASE("effective_recordset is empty for every non-ok status") {
  RoundObservation obs;
  obs.domain = "a.test";
  obs.records = RecordSet(RecordType::A);
  obs.records.insert("10.0.0.1");
  obs.records.insert("10.0.0.254");
  obs.status = QueryStatus::ok();
  CHECK(effective_recordset(obs).size() == 2);

  RoundObservation failed;
  failed.domain = "a.test";
  failed.records = RecordSet(RecordType::A);
  for (auto kind : {QueryStatus::Kind::Empty, QueryStatus::Kind::Nxdomain,
                    QueryStatus::Kind::Timeout, QueryStatus::Kind::Error}) {
    failed.status.kind = kind;
    CHECK(effective_recordset(failed).empty());
  }
}

TEST_CASE("trace validation catches structural breakage") {
  auto trace = testutil::make_trace({"a.test", "b.test"},
                                    {{{"192.0.2.1"}, {}}, {{}, {"192.0.2.2"}}});
  CHECK(trace.observations.size() == 4);

  SUBCASE("missing observation") {
    trace.observations.pop_back();
    CHECK_THROWS_AS(trace.validate(), DataError);
  }
  SUBCASE("ok status with no records") {
    trace.observations[0].records = RecordSet(RecordType::A);
    CHECK_THROWS_AS(trace.validate(), DataError);
  }
  SUBCASE("decreasing timestamps") {
    trace.observations[2].timestamp = 1;
    trace.observations[3].timestamp = 1;
    CHECK_THROWS_AS(trace.validate(), DataError);
  }
}

TEST_CASE("trace file round-trip is identity") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
    auto trace = testutil::random_trace(seed, 10, 20);
    std::stringstream buf;
    write_trace(buf, trace);
    auto parsed = read_trace(buf);
    CHECK(parsed == trace);

    // serialize-parse-serialize is byte identical
    std::stringstream buf2;
    write_trace(buf2, parsed);
    std::stringstream buf3;
    write_trace(buf3, trace);
    CHECK(buf2.str() == buf3.str());
  }
}

TEST_CASE("trace parser reports the first bad line") {
  auto trace = testutil::make_trace({"a.test"}, {{{"192.0.2.1"}, {"192.0.2.2"}}});
  std::stringstream buf;
  write_trace(buf, trace);
  std::string text = buf.str();

  SUBCASE("truncated line") {
    std::string broken = text.substr(0, text.size() - 20);
    std::stringstream in(broken);
    try {
      read_trace(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
    }
  }
  SUBCASE("header disagrees with body") {
    std::string wrong = text;
    wrong.replace(wrong.find("\"q\":2"), 5, "\"q\":3");
    std::stringstream in(wrong);
    CHECK_THROWS_AS(read_trace(in), DataError);
  }
  SUBCASE("unknown status") {
    std::string wrong = text;
    wrong.replace(wrong.find("\"ok\""), 4, "\"whoops\"");
    std::stringstream in(wrong);
    CHECK_THROWS_AS(read_trace(in), ParseError);
  }
}

TEST_CASE("truncate_trace keeps prefixes") {
  auto trace = testutil::random_trace(17, 5, 12);
  auto cut = truncate_trace(trace, 5);
  CHECK(cut.rounds == std::min(5, trace.rounds));
  CHECK(cut.domains == trace.domains);
  cut.validate();
  auto full = truncate_trace(trace, trace.rounds + 10);
  CHECK(full == trace);
}
