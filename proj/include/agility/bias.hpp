#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "agility/graph.hpp"
#include "agility/metrics.hpp"

namespace agility {

enum class BiasKind { Learning, Sampling };

struct BiasStep {
  int index = 0;  // round j for Learning, threshold tau for Sampling
  std::int64_t domain_count = 0;
  std::int64_t record_count = 0;
  std::int64_t edge_count = 0;
  Rational density{0};
  friend bool operator==(const BiasStep&, const BiasStep&) = default;
};

struct BiasCurve {
  BiasKind kind = BiasKind::Learning;
  std::vector<BiasStep> steps;
};

/// Learning-bias curve: statistics of the graph reduced to what was known
/// after each round j = 1..q. The default mode drops both record vertices
/// and edges born after j, so each step equals a from-scratch build on the
/// truncated trace. With strict_vertex_births only late-born record
/// vertices (and their incident edges) are dropped; an edge joining two
/// old vertices at a late round is retained.
BiasCurve learning_bias(const BipartiteDnsGraph& graph, int q,
                        bool strict_vertex_births = false);

/// The reduced graph at a single step j, same two modes. Degree-zero
/// vertices are pruned.
BipartiteDnsGraph learning_snapshot(const BipartiteDnsGraph& graph, int j,
                                    bool strict_vertex_births = false);

/// Sampling-bias curve: for each threshold tau = 1..tau_m (tau_m = max
/// unique_cumulative_values across domain vertices), drop every domain
/// failing COND(tau) with its incident edges, prune, record statistics.
/// Throws DataError if a domain vertex has no series.
BiasCurve sampling_bias(const BipartiteDnsGraph& graph,
                        const std::vector<MetricSeries>& series);

/// The reduced graph at a single threshold tau.
BipartiteDnsGraph sampling_snapshot(const BipartiteDnsGraph& graph,
                                    const std::vector<MetricSeries>& series,
                                    int tau);

/// CSV: step,domains,records,edges,density.
void write_bias_csv(std::ostream& out, const BiasCurve& curve);

}  // namespace agility
