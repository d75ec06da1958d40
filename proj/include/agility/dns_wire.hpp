#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agility/trace.hpp"

namespace agility {

// Minimal DNS wire codec for A/AAAA queries against a recursive resolver.

/// Standard recursive query for `fqdn` of the given type.
std::vector<std::uint8_t> encode_dns_query(std::uint16_t id, const std::string& fqdn,
                                           RecordType rtype);

struct DnsAnswer {
  std::uint16_t id = 0;
  int rcode = 0;
  /// Canonical addresses of the requested type from the answer section.
  /// CNAME links are skipped, not stored.
  std::vector<std::string> addresses;
};

/// Parses a response message. Throws DataError on truncated or malformed
/// packets (including compression-pointer loops).
DnsAnswer decode_dns_response(const std::uint8_t* data, std::size_t len,
                              RecordType rtype);

}  // namespace agility
