#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "agility/rational.hpp"
#include "agility/trace.hpp"

namespace agility {

/// Per-domain agility metrics: the fluxiness vector, the cumulative
/// record-count vector, and their summary scalars.
struct MetricSeries {
  std::string domain;
  RecordType rtype = RecordType::A;
  std::vector<Rational> fluxiness;        // one entry per round
  std::vector<std::int64_t> cumulative;   // running union sizes
  std::int64_t union_size = 0;
  std::int64_t unique_cumulative_values = 0;
};

/// Fluxiness of a single round: 0 for an empty round, else
/// |union_all| / |recordset_i| exactly. Throws DataError if recordset_i is
/// not a subset of union_all.
Rational fluxiness_at(const RecordSet& recordset_i, const RecordSet& union_all);

/// Full metric series for one domain of the trace. The fluxiness numerator
/// is the union over all q rounds. Throws DataError for unknown domains.
MetricSeries metric_series(const ResolutionTrace& trace, const std::string& domain);

/// Series for every domain in trace order.
std::vector<MetricSeries> all_metric_series(const ResolutionTrace& trace);

/// Exclusion condition: at least tau distinct values in the cumulative
/// vector. Throws ConfigError for tau < 1.
bool cond(const MetricSeries& series, int tau);

/// Exploratory variant where round i is scored against the prefix union
/// R_1..R_i instead of the full-trace union. Not used by the bias analyses.
std::vector<Rational> streaming_fluxiness(const ResolutionTrace& trace,
                                          const std::string& domain);

/// One row per (domain, round) followed by one summary row per domain.
void write_metrics_csv(std::ostream& out, const ResolutionTrace& trace);

}  // namespace agility
