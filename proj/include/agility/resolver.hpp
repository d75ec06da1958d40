#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "agility/trace.hpp"

namespace agility {

struct ResolverConfig {
  std::string resolver_address;  // upstream recursive resolver IP
  std::uint16_t resolver_port = 53;
  int rounds = 1;                // q
  double delay_minutes = 0;      // wait between consecutive rounds
  double per_query_timeout_seconds = 5.0;
  int parallelism = 16;          // max in-flight queries within a round
  std::set<RecordType> rtypes{RecordType::A};
  std::string resolver_label;    // recorded in trace metadata
  bool aggregate = false;        // truncate domains to the 2nd level first
};

/// Polls the configured resolver for `rounds` rounds over the domain list,
/// one trace per requested record type (in A, AAAA order). Per-query
/// failures are recorded as statuses and never abort the trace; rounds are
/// synchronous (round i+1 starts only after round i completed). Throws
/// ConfigError before any query on an empty domain list or a bad config.
std::vector<ResolutionTrace> poll(const std::vector<std::string>& domains,
                                  const ResolverConfig& config);

/// Parses a stored trace file. Deterministic; throws ParseError or
/// DataError on malformed or inconsistent input.
ResolutionTrace replay(const std::string& trace_file);

}  // namespace agility
