#include "agility/metrics.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace agility {

Rational fluxiness_at(const RecordSet& recordset_i, const RecordSet& union_all) {
  if (recordset_i.empty()) return Rational(0);
  if (!recordset_i.subset_of(union_all)) {
    throw DataError("round record set is not a subset of the trace union");
  }
  return Rational(static_cast<std::int64_t>(union_all.size()),
                  static_cast<std::int64_t>(recordset_i.size()));
}

MetricSeries metric_series(const ResolutionTrace& trace, const std::string& domain) {
  auto idx = trace.domain_index(domain);
  if (!idx) throw DataError("unknown domain: " + domain);

  MetricSeries series;
  series.domain = domain;
  series.rtype = trace.rtype;
  series.fluxiness.reserve(static_cast<std::size_t>(trace.rounds));
  series.cumulative.reserve(static_cast<std::size_t>(trace.rounds));

  RecordSet running(trace.rtype);
  RecordSet full_union(trace.rtype);
  for (int r = 1; r <= trace.rounds; ++r) {
    full_union.merge(effective_recordset(trace.at(*idx, r)));
  }
  for (int r = 1; r <= trace.rounds; ++r) {
    RecordSet round_set = effective_recordset(trace.at(*idx, r));
    running.merge(round_set);
    series.cumulative.push_back(static_cast<std::int64_t>(running.size()));
    series.fluxiness.push_back(fluxiness_at(round_set, full_union));
  }
  series.union_size = static_cast<std::int64_t>(full_union.size());
  series.unique_cumulative_values = static_cast<std::int64_t>(
      std::set<std::int64_t>(series.cumulative.begin(), series.cumulative.end()).size());
  return series;
}

std::vector<MetricSeries> all_metric_series(const ResolutionTrace& trace) {
  std::vector<MetricSeries> out;
  out.reserve(trace.domains.size());
  for (const auto& d : trace.domains) out.push_back(metric_series(trace, d));
  return out;
}

bool cond(const MetricSeries& series, int tau) {
  if (tau < 1) throw ConfigError("tau must be a positive integer");
  return series.unique_cumulative_values >= tau;
}

std::vector<Rational> streaming_fluxiness(const ResolutionTrace& trace,
                                          const std::string& domain) {
  auto idx = trace.domain_index(domain);
  if (!idx) throw DataError("unknown domain: " + domain);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(trace.rounds));
  RecordSet prefix(trace.rtype);
  for (int r = 1; r <= trace.rounds; ++r) {
    RecordSet round_set = effective_recordset(trace.at(*idx, r));
    prefix.merge(round_set);
    out.push_back(fluxiness_at(round_set, prefix));
  }
  return out;
}

void write_metrics_csv(std::ostream& out, const ResolutionTrace& trace) {
  out << "domain,rtype,round,fluxiness,cumulative,union_size,unique_cumulative_values\n";
  for (const auto& domain : trace.domains) {
    MetricSeries s = metric_series(trace, domain);
    for (int r = 1; r <= trace.rounds; ++r) {
      out << domain << ',' << to_string(s.rtype) << ',' << r << ','
          << to_decimal(s.fluxiness[static_cast<std::size_t>(r - 1)]) << ','
          << s.cumulative[static_cast<std::size_t>(r - 1)] << ",,\n";
    }
    out << domain << ',' << to_string(s.rtype) << ",summary,,," << s.union_size << ','
        << s.unique_cumulative_values << "\n";
  }
}

}  // namespace agility
