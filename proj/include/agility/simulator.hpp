#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "agility/trace.hpp"

namespace agility {

// Synthetic behavior models. Addresses come from never-routable ranges:
// TEST-NET blocks and 198.18.0.0/15 for IPv4, 2001:db8::/32 for IPv6, so a
// synthetic trace can never be mistaken for a measurement.

struct StaticModel {
  std::vector<std::string> addresses;  // fixed answer, every round
};

struct CdnRoundRobinModel {
  int pool_size = 1;     // P
  int per_response = 1;  // k, 1 <= k <= P
  int stride = 1;        // rotation step between rounds
};

struct SlowGrowthModel {
  int initial_size = 1;        // pool size before round 1
  double new_address_prob = 0; // per-round chance of one new pool address
  int per_response = 1;        // newest k pool addresses per response
};

struct FastFluxModel {
  int space_size = 1;      // N
  int per_response = 1;    // k distinct addresses per response
  double fresh_prob = 1.0; // chance a slot draws fresh vs. reuses a seen one
};

struct BehaviorModel;

struct IntermittentModel {
  std::shared_ptr<BehaviorModel> base;
  double empty_prob = 0;  // per-round chance of an EMPTY response
};

struct BehaviorModel {
  std::variant<StaticModel, CdnRoundRobinModel, SlowGrowthModel, FastFluxModel,
               IntermittentModel>
      value;
};

struct ScenarioEntry {
  std::string domain;
  BehaviorModel model;
};

struct Scenario {
  std::vector<ScenarioEntry> entries;
  int rounds = 1;
  std::uint64_t seed = 0;
  double delay_minutes = 1.0;
  RecordType rtype = RecordType::A;
};

/// Deterministic generation: identical scenarios produce identical traces.
/// Per-domain randomness is derived by mixing the scenario seed with an
/// FNV-1a hash of the domain name, so results do not depend on entry order.
/// Throws ConfigError on parameter violations before generating anything.
ResolutionTrace simulate(const Scenario& scenario);

/// JSON scenario document; see README for the key names.
Scenario read_scenario_file(const std::string& path);

}  // namespace agility
