#include "agility/resolver.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <thread>

#include "agility/dns_wire.hpp"
#include "agility/trace_io.hpp"

namespace agility {

namespace {

struct SockAddr {
  sockaddr_storage storage{};
  socklen_t len = 0;
  int family = AF_INET;
};

SockAddr parse_resolver_address(const std::string& ip, std::uint16_t port) {
  SockAddr out;
  in_addr v4{};
  in6_addr v6{};
  if (inet_pton(AF_INET, ip.c_str(), &v4) == 1) {
    auto* sa = reinterpret_cast<sockaddr_in*>(&out.storage);
    sa->sin_family = AF_INET;
    sa->sin_port = htons(port);
    sa->sin_addr = v4;
    out.len = sizeof(sockaddr_in);
    out.family = AF_INET;
    return out;
  }
  if (inet_pton(AF_INET6, ip.c_str(), &v6) == 1) {
    auto* sa = reinterpret_cast<sockaddr_in6*>(&out.storage);
    sa->sin6_family = AF_INET6;
    sa->sin6_port = htons(port);
    sa->sin6_addr = v6;
    out.len = sizeof(sockaddr_in6);
    out.family = AF_INET6;
    return out;
  }
  throw ConfigError("unparseable resolver address: " + ip);
}

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

/// One query over UDP; waits up to timeout_ms for a response with a
/// matching transaction id. Returns the status and fills `records`.
QueryStatus query_once(const SockAddr& server, const std::string& domain,
                       RecordType rtype, int timeout_ms, std::uint16_t txid,
                       RecordSet& records) {
  Fd sock(::socket(server.family, SOCK_DGRAM, 0));
  if (sock.get() < 0) return QueryStatus::error("socket: " + std::string(strerror(errno)));

  std::vector<std::uint8_t> query;
  try {
    query = encode_dns_query(txid, domain, rtype);
  } catch (const DataError& e) {
    return QueryStatus::error(e.what());
  }
  if (::sendto(sock.get(), query.data(), query.size(), 0,
               reinterpret_cast<const sockaddr*>(&server.storage), server.len) < 0) {
    return QueryStatus::error("sendto: " + std::string(strerror(errno)));
  }

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(timeout_ms);
  std::array<std::uint8_t, 4096> buf{};
  while (true) {
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                               deadline - std::chrono::steady_clock::now())
                               .count();
    if (remaining <= 0) return QueryStatus::timeout();
    pollfd pfd{sock.get(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining));
    if (ready < 0) return QueryStatus::error("poll: " + std::string(strerror(errno)));
    if (ready == 0) return QueryStatus::timeout();
    const ssize_t n = ::recv(sock.get(), buf.data(), buf.size(), 0);
    if (n < 0) return QueryStatus::error("recv: " + std::string(strerror(errno)));
    try {
      DnsAnswer answer = decode_dns_response(buf.data(), static_cast<std::size_t>(n), rtype);
      if (answer.id != txid) continue;  // stray datagram, keep waiting
      if (answer.rcode == 3) return QueryStatus::nxdomain();
      if (answer.rcode != 0) {
        return QueryStatus::error("rcode " + std::to_string(answer.rcode));
      }
      for (const auto& addr : answer.addresses) records.insert(addr);
      return records.empty() ? QueryStatus::empty() : QueryStatus::ok();
    } catch (const DataError& e) {
      return QueryStatus::error(e.what());
    }
  }
}

std::uint16_t transaction_id(int round, std::size_t domain_index, RecordType rtype) {
  std::uint32_t h = static_cast<std::uint32_t>(round) * 2654435761u;
  h ^= static_cast<std::uint32_t>(domain_index) * 40503u;
  h ^= rtype == RecordType::A ? 0u : 0x8000u;
  return static_cast<std::uint16_t>(h & 0xffff) | 1;
}

}  // namespace

std::vector<ResolutionTrace> poll(const std::vector<std::string>& domains,
                                  const ResolverConfig& config) {
  if (domains.empty()) throw ConfigError("empty domain list");
  if (config.rounds < 1) throw ConfigError("rounds must be >= 1");
  if (config.delay_minutes < 0) throw ConfigError("delay must be >= 0");
  if (config.per_query_timeout_seconds <= 0) throw ConfigError("timeout must be > 0");
  if (config.parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (config.rtypes.empty()) throw ConfigError("no record types requested");
  const SockAddr server = parse_resolver_address(config.resolver_address,
                                                 config.resolver_port);

  std::vector<std::string> names = domains;
  if (config.aggregate) {
    for (auto& d : names) d = aggregate_domain(d);
  }

  std::vector<ResolutionTrace> traces;
  for (RecordType rtype : config.rtypes) {
    ResolutionTrace t;
    t.rtype = rtype;
    t.rounds = config.rounds;
    t.domains = names;
    t.meta.resolver = config.resolver_label.empty() ? config.resolver_address
                                                    : config.resolver_label;
    t.meta.delay_minutes = config.delay_minutes;
    t.meta.aggregated = config.aggregate;
    t.observations.resize(static_cast<std::size_t>(config.rounds) * names.size());
    traces.push_back(std::move(t));
  }

  const int timeout_ms =
      static_cast<int>(std::lround(config.per_query_timeout_seconds * 1000.0));

  for (int round = 1; round <= config.rounds; ++round) {
    if (round > 1 && config.delay_minutes > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(static_cast<std::int64_t>(
              std::llround(config.delay_minutes * 60.0 * 1000.0))));
    }
    for (std::size_t ti = 0; ti < traces.size(); ++ti) {
      ResolutionTrace& trace = traces[ti];
      const RecordType rtype = trace.rtype;
      std::atomic<std::size_t> next{0};
      auto worker = [&]() {
        while (true) {
          const std::size_t d = next.fetch_add(1);
          if (d >= names.size()) return;
          RoundObservation obs;
          obs.round = round;
          obs.domain = names[d];
          obs.records = RecordSet(rtype);
          const std::uint16_t txid = transaction_id(round, d, rtype);
          obs.status = query_once(server, names[d], rtype, timeout_ms, txid, obs.records);
          if (obs.status.kind == QueryStatus::Kind::Timeout) {
            // one retry before recording a timeout
            obs.records = RecordSet(rtype);
            obs.status = query_once(server, names[d], rtype, timeout_ms,
                                    static_cast<std::uint16_t>(txid ^ 0x5555) | 1,
                                    obs.records);
          }
          obs.timestamp = std::chrono::duration_cast<std::chrono::seconds>(
                              std::chrono::system_clock::now().time_since_epoch())
                              .count();
          trace.observations[(static_cast<std::size_t>(round) - 1) * names.size() + d] =
              std::move(obs);
        }
      };
      const std::size_t nthreads =
          std::min<std::size_t>(static_cast<std::size_t>(config.parallelism), names.size());
      std::vector<std::thread> pool;
      for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      // Batch timestamps: all queries of one round share the round's
      // completion time so per-domain timestamps never go backwards under
      // concurrency.
      std::int64_t round_ts = 1;
      for (std::size_t d = 0; d < names.size(); ++d) {
        round_ts = std::max(round_ts,
                            trace.observations[(static_cast<std::size_t>(round) - 1) *
                                                   names.size() + d]
                                .timestamp);
      }
      for (std::size_t d = 0; d < names.size(); ++d) {
        trace.observations[(static_cast<std::size_t>(round) - 1) * names.size() + d]
            .timestamp = round_ts;
      }
    }
  }
  for (auto& t : traces) t.validate();
  return traces;
}

ResolutionTrace replay(const std::string& trace_file) {
  return read_trace_file(trace_file);
}

}  // namespace agility
