#include "agility/trace.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <array>

namespace agility {

std::string to_string(RecordType t) {
  return t == RecordType::A ? "A" : "AAAA";
}

RecordType record_type_from_string(const std::string& s) {
  if (s == "A") return RecordType::A;
  if (s == "AAAA") return RecordType::AAAA;
  throw DataError("unknown record type: " + s);
}

std::string to_string(QueryStatus::Kind k) {
  switch (k) {
    case QueryStatus::Kind::Ok: return "ok";
    case QueryStatus::Kind::Empty: return "empty";
    case QueryStatus::Kind::Nxdomain: return "nxdomain";
    case QueryStatus::Kind::Timeout: return "timeout";
    case QueryStatus::Kind::Error: return "error";
  }
  return "error";
}

QueryStatus::Kind status_kind_from_string(const std::string& s) {
  if (s == "ok") return QueryStatus::Kind::Ok;
  if (s == "empty") return QueryStatus::Kind::Empty;
  if (s == "nxdomain") return QueryStatus::Kind::Nxdomain;
  if (s == "timeout") return QueryStatus::Kind::Timeout;
  if (s == "error") return QueryStatus::Kind::Error;
  throw DataError("unknown status: " + s);
}

std::optional<std::string> canonicalize_address(const std::string& text, RecordType t) {
  if (t == RecordType::A) {
    in_addr addr{};
    if (inet_pton(AF_INET, text.c_str(), &addr) != 1) return std::nullopt;
    std::array<char, INET_ADDRSTRLEN> buf{};
    if (!inet_ntop(AF_INET, &addr, buf.data(), buf.size())) return std::nullopt;
    return std::string(buf.data());
  }
  in6_addr addr{};
  if (inet_pton(AF_INET6, text.c_str(), &addr) != 1) return std::nullopt;
  std::array<char, INET6_ADDRSTRLEN> buf{};
  if (!inet_ntop(AF_INET6, &addr, buf.data(), buf.size())) return std::nullopt;
  return std::string(buf.data());
}

void RecordSet::insert(const std::string& address) {
  auto canonical = canonicalize_address(address, rtype_);
  if (!canonical) {
    throw DataError("not a valid " + to_string(rtype_) + " address: " + address);
  }
  insert_canonical(std::move(*canonical));
}

void RecordSet::insert_canonical(std::string address) {
  auto it = std::lower_bound(records_.begin(), records_.end(), address);
  if (it != records_.end() && *it == address) return;
  records_.insert(it, std::move(address));
}

bool RecordSet::contains(const std::string& canonical_address) const {
  return std::binary_search(records_.begin(), records_.end(), canonical_address);
}

bool RecordSet::subset_of(const RecordSet& other) const {
  return std::includes(other.records_.begin(), other.records_.end(),
                       records_.begin(), records_.end());
}

void RecordSet::merge(const RecordSet& other) {
  std::vector<std::string> merged;
  merged.reserve(records_.size() + other.records_.size());
  std::set_union(records_.begin(), records_.end(), other.records_.begin(),
                 other.records_.end(), std::back_inserter(merged));
  records_ = std::move(merged);
}

const RoundObservation& ResolutionTrace::at(std::size_t domain_index, int round) const {
  return observations.at((static_cast<std::size_t>(round) - 1) * domains.size() +
                         domain_index);
}

std::optional<std::size_t> ResolutionTrace::domain_index(const std::string& domain) const {
  auto it = std::find(domains.begin(), domains.end(), domain);
  if (it == domains.end()) return std::nullopt;
  return static_cast<std::size_t>(it - domains.begin());
}

void ResolutionTrace::validate() const {
  if (rounds < 0) throw DataError("negative round count");
  if (observations.size() != domains.size() * static_cast<std::size_t>(rounds)) {
    throw DataError("observation count " + std::to_string(observations.size()) +
                    " does not equal |domains| x q = " +
                    std::to_string(domains.size() * static_cast<std::size_t>(rounds)));
  }
  for (int r = 1; r <= rounds; ++r) {
    for (std::size_t d = 0; d < domains.size(); ++d) {
      const auto& obs = at(d, r);
      if (obs.round != r) {
        throw DataError("round index mismatch at (" + domains[d] + ", " +
                        std::to_string(r) + ")");
      }
      if (obs.domain != domains[d]) {
        throw DataError("domain mismatch in round " + std::to_string(r) +
                        ": expected " + domains[d] + ", got " + obs.domain);
      }
      if (obs.timestamp <= 0) throw DataError("non-positive timestamp");
      if (obs.records.rtype() != rtype) throw DataError("record type mismatch");
      const bool ok = obs.status.kind == QueryStatus::Kind::Ok;
      if (ok && obs.records.empty()) {
        throw DataError("ok status with empty record set for " + obs.domain);
      }
      if (!ok && !obs.records.empty()) {
        throw DataError("non-ok status with records for " + obs.domain);
      }
      if (r > 1 && at(d, r - 1).timestamp > obs.timestamp) {
        throw DataError("timestamps decrease for " + obs.domain);
      }
    }
  }
}

namespace {

void check_labels(const std::string& fqdn, const std::vector<std::string>& labels) {
  if (labels.empty()) throw DataError("invalid domain: " + fqdn);
  for (const auto& label : labels) {
    if (label.empty() || label.size() > 63) {
      throw DataError("invalid domain label in: " + fqdn);
    }
  }
}

}  // namespace

std::string aggregate_domain(const std::string& fqdn) {
  std::string name = fqdn;
  if (!name.empty() && name.back() == '.') name.pop_back();
  if (name.empty()) throw DataError("invalid domain: empty name");

  std::vector<std::string> labels;
  std::size_t start = 0;
  while (true) {
    auto dot = name.find('.', start);
    if (dot == std::string::npos) {
      labels.push_back(name.substr(start));
      break;
    }
    labels.push_back(name.substr(start, dot - start));
    start = dot + 1;
  }
  check_labels(fqdn, labels);
  if (labels.size() <= 2) return name;
  return labels[labels.size() - 2] + "." + labels[labels.size() - 1];
}

RecordSet effective_recordset(const RoundObservation& obs) {
  if (obs.status.kind == QueryStatus::Kind::Ok) return obs.records;
  return RecordSet(obs.records.rtype());
}

ResolutionTrace truncate_trace(const ResolutionTrace& trace, int j) {
  ResolutionTrace out;
  out.rtype = trace.rtype;
  out.domains = trace.domains;
  out.meta = trace.meta;
  out.rounds = std::clamp(j, 0, trace.rounds);
  out.observations.assign(
      trace.observations.begin(),
      trace.observations.begin() +
          static_cast<std::ptrdiff_t>(out.rounds * trace.domains.size()));
  return out;
}

}  // namespace agility
