#include "agility/dns_wire.hpp"

#include <arpa/inet.h>

#include <array>
#include <cstring>

namespace agility {

namespace {

constexpr std::uint16_t kTypeA = 1;
constexpr std::uint16_t kTypeCname = 5;
constexpr std::uint16_t kTypeAaaa = 28;
constexpr std::uint16_t kClassIn = 1;

std::uint16_t qtype_of(RecordType t) {
  return t == RecordType::A ? kTypeA : kTypeAaaa;
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint16_t get16(const std::uint8_t* data, std::size_t len, std::size_t& pos) {
  if (pos + 2 > len) throw DataError("truncated DNS message");
  std::uint16_t v = static_cast<std::uint16_t>((data[pos] << 8) | data[pos + 1]);
  pos += 2;
  return v;
}

// Skips a (possibly compressed) name starting at pos.
void skip_name(const std::uint8_t* data, std::size_t len, std::size_t& pos) {
  std::size_t hops = 0;
  std::size_t p = pos;
  bool jumped = false;
  while (true) {
    if (p >= len) throw DataError("truncated DNS name");
    const std::uint8_t label = data[p];
    if ((label & 0xc0) == 0xc0) {
      if (p + 2 > len) throw DataError("truncated compression pointer");
      if (!jumped) pos = p + 2;
      p = static_cast<std::size_t>((label & 0x3f) << 8 | data[p + 1]);
      jumped = true;
      if (++hops > 64) throw DataError("compression pointer loop");
      continue;
    }
    if (label == 0) {
      if (!jumped) pos = p + 1;
      return;
    }
    p += 1 + label;
  }
}

}  // namespace

std::vector<std::uint8_t> encode_dns_query(std::uint16_t id, const std::string& fqdn,
                                           RecordType rtype) {
  std::vector<std::uint8_t> out;
  out.reserve(fqdn.size() + 18);
  put16(out, id);
  put16(out, 0x0100);  // RD
  put16(out, 1);       // QDCOUNT
  put16(out, 0);
  put16(out, 0);
  put16(out, 0);

  std::string name = fqdn;
  if (!name.empty() && name.back() == '.') name.pop_back();
  std::size_t start = 0;
  while (start <= name.size()) {
    auto dot = name.find('.', start);
    if (dot == std::string::npos) dot = name.size();
    const std::size_t n = dot - start;
    if (n == 0 || n > 63) throw DataError("invalid label in domain: " + fqdn);
    out.push_back(static_cast<std::uint8_t>(n));
    out.insert(out.end(), name.begin() + static_cast<std::ptrdiff_t>(start),
               name.begin() + static_cast<std::ptrdiff_t>(dot));
    start = dot + 1;
    if (dot == name.size()) break;
  }
  out.push_back(0);
  put16(out, qtype_of(rtype));
  put16(out, kClassIn);
  return out;
}

DnsAnswer decode_dns_response(const std::uint8_t* data, std::size_t len,
                              RecordType rtype) {
  std::size_t pos = 0;
  DnsAnswer answer;
  answer.id = get16(data, len, pos);
  const std::uint16_t flags = get16(data, len, pos);
  answer.rcode = flags & 0x000f;
  const std::uint16_t qdcount = get16(data, len, pos);
  const std::uint16_t ancount = get16(data, len, pos);
  get16(data, len, pos);  // NSCOUNT
  get16(data, len, pos);  // ARCOUNT

  for (std::uint16_t i = 0; i < qdcount; ++i) {
    skip_name(data, len, pos);
    pos += 4;  // qtype + qclass
    if (pos > len) throw DataError("truncated question section");
  }
  for (std::uint16_t i = 0; i < ancount; ++i) {
    skip_name(data, len, pos);
    const std::uint16_t type = get16(data, len, pos);
    get16(data, len, pos);  // class
    pos += 4;               // TTL, deliberately ignored
    const std::uint16_t rdlen = get16(data, len, pos);
    if (pos + rdlen > len) throw DataError("truncated resource record");
    if (type == qtype_of(rtype)) {
      const std::size_t want = rtype == RecordType::A ? 4 : 16;
      if (rdlen != want) throw DataError("unexpected RDATA length");
      std::array<char, INET6_ADDRSTRLEN> buf{};
      const int family = rtype == RecordType::A ? AF_INET : AF_INET6;
      if (!inet_ntop(family, data + pos, buf.data(), buf.size())) {
        throw DataError("unrenderable address record");
      }
      answer.addresses.emplace_back(buf.data());
    }
    // CNAME and anything else: skipped, the chain's terminal address
    // records appear as their own answer entries.
    (void)kTypeCname;
    pos += rdlen;
  }
  return answer;
}

}  // namespace agility
