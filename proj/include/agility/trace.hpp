#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agility/errors.hpp"

namespace agility {

enum class RecordType { A, AAAA };

std::string to_string(RecordType t);
RecordType record_type_from_string(const std::string& s);

/// Outcome of a single query. Everything except Ok yields an empty
/// effective record set.
struct QueryStatus {
  enum class Kind { Ok, Empty, Nxdomain, Timeout, Error };
  Kind kind = Kind::Empty;
  // Diagnostic only; not part of value identity and not serialized.
  std::string message;

  static QueryStatus ok() { return {Kind::Ok, {}}; }
  static QueryStatus empty() { return {Kind::Empty, {}}; }
  static QueryStatus nxdomain() { return {Kind::Nxdomain, {}}; }
  static QueryStatus timeout() { return {Kind::Timeout, {}}; }
  static QueryStatus error(std::string msg) { return {Kind::Error, std::move(msg)}; }

  friend bool operator==(const QueryStatus& a, const QueryStatus& b) {
    return a.kind == b.kind;
  }
};

std::string to_string(QueryStatus::Kind k);
QueryStatus::Kind status_kind_from_string(const std::string& s);

/// Canonical textual form of an address, or nullopt if it does not parse as
/// the given type. IPv4 is dotted quad without leading zeros; IPv6 is the
/// lowercase compressed form.
std::optional<std::string> canonicalize_address(const std::string& text, RecordType t);

/// The unique records of one type returned for one domain in one round.
/// Addresses are held sorted; set semantics, no duplicates.
class RecordSet {
 public:
  RecordSet() = default;
  explicit RecordSet(RecordType t) : rtype_(t) {}

  /// Canonicalizes and inserts; throws DataError if the text is not a valid
  /// address of this set's type.
  void insert(const std::string& address);
  /// Inserts an already-canonical address without re-parsing.
  void insert_canonical(std::string address);

  bool contains(const std::string& canonical_address) const;
  bool subset_of(const RecordSet& other) const;
  void merge(const RecordSet& other);

  RecordType rtype() const { return rtype_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::vector<std::string>& records() const { return records_; }

  friend bool operator==(const RecordSet& a, const RecordSet& b) {
    return a.rtype_ == b.rtype_ && a.records_ == b.records_;
  }

 private:
  RecordType rtype_ = RecordType::A;
  std::vector<std::string> records_;  // sorted, unique
};

struct RoundObservation {
  int round = 1;  // 1-based
  std::int64_t timestamp = 1;
  std::string domain;
  QueryStatus status;
  RecordSet records;

  friend bool operator==(const RoundObservation&, const RoundObservation&) = default;
};

struct TraceMetadata {
  std::string resolver;
  double delay_minutes = 0.0;
  bool aggregated = false;

  friend bool operator==(const TraceMetadata&, const TraceMetadata&) = default;
};

/// The full record of q resolving rounds over a domain list. Observations
/// are stored round-major: index (round-1) * |domains| + domain_index.
struct ResolutionTrace {
  RecordType rtype = RecordType::A;
  int rounds = 0;  // q
  std::vector<std::string> domains;
  std::vector<RoundObservation> observations;
  TraceMetadata meta;

  const RoundObservation& at(std::size_t domain_index, int round) const;

  std::optional<std::size_t> domain_index(const std::string& domain) const;

  /// Throws DataError unless the trace satisfies all structural invariants:
  /// one observation per (domain, round), dense 1..q rounds, non-decreasing
  /// timestamps per domain, Ok iff non-empty records, matching rtype.
  void validate() const;

  friend bool operator==(const ResolutionTrace&, const ResolutionTrace&) = default;
};

/// Truncates a domain name to its two highest-level labels by plain label
/// counting. Inputs with at most two labels pass through unchanged.
std::string aggregate_domain(const std::string& fqdn);

/// The record set as seen by the metrics: the observation's records for Ok,
/// the empty set otherwise.
RecordSet effective_recordset(const RoundObservation& obs);

/// The trace restricted to rounds 1..j (j clamped to [0, q]).
ResolutionTrace truncate_trace(const ResolutionTrace& trace, int j);

}  // namespace agility
