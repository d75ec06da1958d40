#include "agility/simulator.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_set>

#include "json.hpp"

namespace agility {

namespace {

constexpr std::int64_t kSyntheticEpoch = 1600000000;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Small deterministic generator so traces do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64(state_);
  }
  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// IPv4 ids map into the three TEST-NET /24s first, then 198.18.0.0/15.
constexpr std::uint64_t kIpv4Capacity = 768 + 131072;

std::string synthetic_address(RecordType rtype, std::uint64_t id) {
  if (rtype == RecordType::A) {
    if (id >= kIpv4Capacity) {
      throw ConfigError("synthetic IPv4 address space exhausted");
    }
    if (id < 768) {
      static const std::array<const char*, 3> nets = {"192.0.2.", "198.51.100.",
                                                      "203.0.113."};
      return std::string(nets[id / 256]) + std::to_string(id % 256);
    }
    const std::uint64_t n = id - 768;
    return "198." + std::to_string(18 + n / 65536) + "." +
           std::to_string((n / 256) % 256) + "." + std::to_string(n % 256);
  }
  // 2001:db8::/32 with the id in the low 64 bits, canonicalized by ntop.
  std::array<std::uint8_t, 16> bytes{};
  bytes[0] = 0x20;
  bytes[1] = 0x01;
  bytes[2] = 0x0d;
  bytes[3] = 0xb8;
  for (int i = 0; i < 8; ++i) {
    bytes[static_cast<std::size_t>(15 - i)] = static_cast<std::uint8_t>(id >> (8 * i));
  }
  std::array<char, INET6_ADDRSTRLEN> buf{};
  inet_ntop(AF_INET6, bytes.data(), buf.data(), buf.size());
  return std::string(buf.data());
}

void validate_model(const BehaviorModel& model, RecordType rtype) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StaticModel>) {
          if (m.addresses.empty()) throw ConfigError("static model needs addresses");
          for (const auto& a : m.addresses) {
            if (!canonicalize_address(a, rtype)) {
              throw ConfigError("static model address not valid for rtype: " + a);
            }
          }
        } else if constexpr (std::is_same_v<T, CdnRoundRobinModel>) {
          if (m.pool_size < 1) throw ConfigError("cdn pool_size must be >= 1");
          if (m.per_response < 1 || m.per_response > m.pool_size) {
            throw ConfigError("cdn per_response must satisfy 1 <= k <= pool_size");
          }
          if (m.stride < 1) throw ConfigError("cdn stride must be >= 1");
        } else if constexpr (std::is_same_v<T, SlowGrowthModel>) {
          if (m.initial_size < 1) throw ConfigError("slow_growth initial size >= 1");
          if (m.per_response < 1) throw ConfigError("slow_growth per_response >= 1");
          if (m.new_address_prob < 0 || m.new_address_prob > 1) {
            throw ConfigError("slow_growth probability outside [0, 1]");
          }
        } else if constexpr (std::is_same_v<T, FastFluxModel>) {
          if (m.space_size < 1) throw ConfigError("fast_flux space_size >= 1");
          if (m.per_response < 1 || m.per_response > m.space_size) {
            throw ConfigError("fast_flux per_response must satisfy 1 <= k <= N");
          }
          if (m.fresh_prob < 0 || m.fresh_prob > 1) {
            throw ConfigError("fast_flux probability outside [0, 1]");
          }
        } else if constexpr (std::is_same_v<T, IntermittentModel>) {
          if (!m.base) throw ConfigError("intermittent model needs a base model");
          if (m.empty_prob < 0 || m.empty_prob > 1) {
            throw ConfigError("intermittent probability outside [0, 1]");
          }
          if (std::holds_alternative<IntermittentModel>(m.base->value)) {
            throw ConfigError("intermittent models do not nest");
          }
          validate_model(*m.base, rtype);
        }
      },
      model.value);
}

// Per-domain generator state; local address ids are interleaved into the
// shared synthetic space as id * num_domains + entry_index.
class DomainSim {
 public:
  DomainSim(const ScenarioEntry& entry, std::size_t entry_index,
            std::size_t num_domains, RecordType rtype, std::uint64_t seed)
      : entry_(entry),
        index_(entry_index),
        stride_(num_domains),
        rtype_(rtype),
        rng_(splitmix64(seed ^ fnv1a(entry.domain))) {
    if (const auto* sg = std::get_if<SlowGrowthModel>(&entry.model.value)) {
      pool_size_ = static_cast<std::uint64_t>(sg->initial_size);
    } else if (const auto* im = std::get_if<IntermittentModel>(&entry.model.value)) {
      if (const auto* base_sg = std::get_if<SlowGrowthModel>(&im->base->value)) {
        pool_size_ = static_cast<std::uint64_t>(base_sg->initial_size);
      }
    }
  }

  /// Record set for the given round; empty set means an EMPTY response.
  RecordSet respond(int round) { return respond(entry_.model, round); }

 private:
  std::string address(std::uint64_t local_id) const {
    return synthetic_address(rtype_, local_id * stride_ + index_);
  }

  RecordSet respond(const BehaviorModel& model, int round) {
    RecordSet out(rtype_);
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, StaticModel>) {
            for (const auto& a : m.addresses) out.insert(a);
          } else if constexpr (std::is_same_v<T, CdnRoundRobinModel>) {
            const auto p = static_cast<std::uint64_t>(m.pool_size);
            const auto offset =
                static_cast<std::uint64_t>(round - 1) * static_cast<std::uint64_t>(m.stride);
            for (int t = 0; t < m.per_response; ++t) {
              out.insert_canonical(address((offset + static_cast<std::uint64_t>(t)) % p));
            }
          } else if constexpr (std::is_same_v<T, SlowGrowthModel>) {
            if (rng_.uniform() < m.new_address_prob) ++pool_size_;
            const auto k = std::min<std::uint64_t>(
                static_cast<std::uint64_t>(m.per_response), pool_size_);
            for (std::uint64_t i = pool_size_ - k; i < pool_size_; ++i) {
              out.insert_canonical(address(i));
            }
          } else if constexpr (std::is_same_v<T, FastFluxModel>) {
            const auto n = static_cast<std::uint64_t>(m.space_size);
            while (out.size() < static_cast<std::size_t>(m.per_response)) {
              std::uint64_t id;
              if (seen_.empty() || rng_.uniform() < m.fresh_prob) {
                id = rng_.below(n);
              } else {
                id = seen_[rng_.below(seen_.size())];
              }
              // linear probe keeps the response set at k distinct addresses
              for (std::uint64_t tries = 0; tries < n; ++tries, id = (id + 1) % n) {
                std::string a = address(id);
                if (!out.contains(a)) {
                  out.insert_canonical(std::move(a));
                  if (seen_ids_.insert(id).second) seen_.push_back(id);
                  break;
                }
              }
            }
          } else if constexpr (std::is_same_v<T, IntermittentModel>) {
            const bool empty = rng_.uniform() < m.empty_prob;
            RecordSet base = respond(*m.base, round);
            if (!empty) out = std::move(base);
          }
        },
        model.value);
    return out;
  }

  const ScenarioEntry& entry_;
  std::size_t index_;
  std::size_t stride_;
  RecordType rtype_;
  Rng rng_;
  std::uint64_t pool_size_ = 0;               // slow growth
  std::vector<std::uint64_t> seen_;            // fast flux, draw order
  std::unordered_set<std::uint64_t> seen_ids_; // fast flux, membership
};

}  // namespace

ResolutionTrace simulate(const Scenario& scenario) {
  if (scenario.rounds < 1) throw ConfigError("q must be >= 1");
  if (scenario.entries.empty()) throw ConfigError("scenario has no domains");
  for (const auto& e : scenario.entries) {
    if (e.domain.empty()) throw ConfigError("scenario entry with empty domain");
    validate_model(e.model, scenario.rtype);
  }

  std::vector<DomainSim> sims;
  sims.reserve(scenario.entries.size());
  for (std::size_t i = 0; i < scenario.entries.size(); ++i) {
    sims.emplace_back(scenario.entries[i], i, scenario.entries.size(), scenario.rtype,
                      scenario.seed);
  }

  ResolutionTrace trace;
  trace.rtype = scenario.rtype;
  trace.rounds = scenario.rounds;
  trace.meta.resolver = "simulator";
  trace.meta.delay_minutes = scenario.delay_minutes;
  trace.meta.aggregated = false;
  for (const auto& e : scenario.entries) trace.domains.push_back(e.domain);

  const auto delay_seconds =
      static_cast<std::int64_t>(std::llround(scenario.delay_minutes * 60.0));
  trace.observations.reserve(static_cast<std::size_t>(scenario.rounds) *
                             scenario.entries.size());
  for (int round = 1; round <= scenario.rounds; ++round) {
    const std::int64_t ts =
        kSyntheticEpoch + static_cast<std::int64_t>(round - 1) * delay_seconds;
    for (std::size_t d = 0; d < sims.size(); ++d) {
      RoundObservation obs;
      obs.round = round;
      obs.timestamp = ts;
      obs.domain = scenario.entries[d].domain;
      obs.records = sims[d].respond(round);
      obs.status = obs.records.empty() ? QueryStatus::empty() : QueryStatus::ok();
      trace.observations.push_back(std::move(obs));
    }
  }
  trace.validate();
  return trace;
}

namespace {

using Json = nlohmann::json;

BehaviorModel parse_model(const Json& j) {
  if (!j.contains("model")) throw ConfigError("scenario entry missing \"model\"");
  const std::string kind = j.at("model").get<std::string>();
  BehaviorModel model;
  try {
    if (kind == "static") {
      StaticModel m;
      m.addresses = j.at("addresses").get<std::vector<std::string>>();
      model.value = std::move(m);
    } else if (kind == "cdn_round_robin") {
      CdnRoundRobinModel m;
      m.pool_size = j.at("pool_size").get<int>();
      m.per_response = j.at("per_response").get<int>();
      m.stride = j.value("stride", 1);
      model.value = m;
    } else if (kind == "slow_growth") {
      SlowGrowthModel m;
      m.initial_size = j.value("initial_size", 1);
      m.new_address_prob = j.at("new_address_prob").get<double>();
      m.per_response = j.value("per_response", 1);
      model.value = m;
    } else if (kind == "fast_flux") {
      FastFluxModel m;
      m.space_size = j.at("space_size").get<int>();
      m.per_response = j.value("per_response", 1);
      m.fresh_prob = j.value("fresh_prob", 1.0);
      model.value = m;
    } else if (kind == "intermittent") {
      IntermittentModel m;
      m.empty_prob = j.at("empty_prob").get<double>();
      m.base = std::make_shared<BehaviorModel>(parse_model(j.at("base")));
      model.value = std::move(m);
    } else {
      throw ConfigError("unknown model kind: " + kind);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad parameters for model \"" + kind + "\": " + e.what());
  }
  return model;
}

}  // namespace

Scenario read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("scenario file is not valid JSON: " + std::string(e.what()));
  }
  Scenario s;
  try {
    s.rounds = j.at("q").get<int>();
    s.seed = j.value("seed", 0ULL);
    s.delay_minutes = j.value("delay_minutes", 1.0);
    s.rtype = record_type_from_string(j.value("rtype", std::string("A")));
    for (const auto& entry : j.at("domains")) {
      ScenarioEntry e;
      e.domain = entry.at("name").get<std::string>();
      e.model = parse_model(entry);
      s.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad scenario file: " + std::string(e.what()));
  }
  return s;
}

}  // namespace agility
