#include "agility/bias.hpp"

#include <algorithm>
#include <ostream>

namespace agility {

namespace {

Rational step_density(std::int64_t domains, std::int64_t records, std::int64_t edges) {
  if (domains == 0 || records == 0) return Rational(0);
  return Rational(edges, domains * records);
}

// Activation round of each graph element: the first step j at which it is
// present in the reduced graph G_{R_j}.
struct Activations {
  std::vector<int> domain;  // per domain vertex
  std::vector<int> record;  // per record vertex
  std::vector<int> edge;    // per edge
};

Activations learning_activations(const BipartiteDnsGraph& graph,
                                 bool strict_vertex_births) {
  Activations act;
  act.record = graph.record_births();
  if (!strict_vertex_births) {
    act.domain = graph.domain_births();
    act.edge.reserve(graph.edges().size());
    for (const auto& e : graph.edges()) act.edge.push_back(e.birth);
    return act;
  }
  // Strict mode removes only late-born record vertices; an edge survives at
  // step j iff its record endpoint was born by j, and a domain survives iff
  // any incident edge does.
  act.edge.reserve(graph.edges().size());
  act.domain.assign(graph.domain_vertices().size(), 0);
  std::vector<bool> seen(graph.domain_vertices().size(), false);
  for (const auto& e : graph.edges()) {
    const int a = graph.record_births()[e.record];
    act.edge.push_back(a);
    if (!seen[e.domain] || a < act.domain[e.domain]) {
      act.domain[e.domain] = a;
      seen[e.domain] = true;
    }
  }
  return act;
}

}  // namespace

BiasCurve learning_bias(const BipartiteDnsGraph& graph, int q,
                        bool strict_vertex_births) {
  if (q < 1) throw ConfigError("q must be >= 1");
  for (int b : graph.record_births()) {
    if (b < 1 || b > q) throw DataError("record birth outside 1..q");
  }
  const Activations act = learning_activations(graph, strict_vertex_births);

  // Forward accumulation: histogram of activations per round, then running
  // sums. Observationally identical to pruning at each j by nestedness.
  std::vector<std::int64_t> new_domains(static_cast<std::size_t>(q) + 1, 0);
  std::vector<std::int64_t> new_records(static_cast<std::size_t>(q) + 1, 0);
  std::vector<std::int64_t> new_edges(static_cast<std::size_t>(q) + 1, 0);
  for (int a : act.domain) ++new_domains[static_cast<std::size_t>(a)];
  for (int a : act.record) ++new_records[static_cast<std::size_t>(a)];
  for (int a : act.edge) ++new_edges[static_cast<std::size_t>(a)];

  BiasCurve curve;
  curve.kind = BiasKind::Learning;
  curve.steps.reserve(static_cast<std::size_t>(q));
  std::int64_t domains = 0, records = 0, edges = 0;
  for (int j = 1; j <= q; ++j) {
    domains += new_domains[static_cast<std::size_t>(j)];
    records += new_records[static_cast<std::size_t>(j)];
    edges += new_edges[static_cast<std::size_t>(j)];
    curve.steps.push_back({j, domains, records, edges,
                           step_density(domains, records, edges)});
  }
  return curve;
}

BipartiteDnsGraph learning_snapshot(const BipartiteDnsGraph& graph, int j,
                                    bool strict_vertex_births) {
  BipartiteDnsGraph reduced(graph.rtype());
  for (const auto& e : graph.edges()) {
    const int activation =
        strict_vertex_births ? graph.record_births()[e.record] : e.birth;
    if (activation > j) continue;
    reduced.observe(graph.domain_vertices()[e.domain],
                    graph.record_vertices()[e.record], e.birth);
  }
  return reduced;
}

namespace {

// Per-domain-vertex count of unique cumulative values; the domain passes
// COND(tau) for every tau <= this count.
std::vector<int> unique_value_counts(const BipartiteDnsGraph& graph,
                                     const std::vector<MetricSeries>& series) {
  std::unordered_map<std::string, std::int64_t> by_domain;
  for (const auto& s : series) by_domain[s.domain] = s.unique_cumulative_values;
  std::vector<int> counts;
  counts.reserve(graph.domain_vertices().size());
  for (const auto& d : graph.domain_vertices()) {
    auto it = by_domain.find(d);
    if (it == by_domain.end()) {
      throw DataError("no metric series for domain vertex " + d);
    }
    counts.push_back(static_cast<int>(it->second));
  }
  return counts;
}

}  // namespace

BiasCurve sampling_bias(const BipartiteDnsGraph& graph,
                        const std::vector<MetricSeries>& series) {
  const std::vector<int> pass_until = unique_value_counts(graph, series);
  int tau_m = 1;
  for (int u : pass_until) tau_m = std::max(tau_m, u);

  // Survival thresholds: a domain is present for tau <= pass_until, an edge
  // follows its domain, a record survives while its best domain does.
  std::vector<int> record_until(graph.record_vertices().size(), 0);
  std::vector<std::int64_t> edge_hist(static_cast<std::size_t>(tau_m) + 2, 0);
  for (const auto& e : graph.edges()) {
    const int u = pass_until[e.domain];
    ++edge_hist[static_cast<std::size_t>(std::min(u, tau_m) + 1)];
    record_until[e.record] = std::max(record_until[e.record], u);
  }
  std::vector<std::int64_t> domain_hist(static_cast<std::size_t>(tau_m) + 2, 0);
  for (int u : pass_until) ++domain_hist[static_cast<std::size_t>(std::min(u, tau_m) + 1)];
  std::vector<std::int64_t> record_hist(static_cast<std::size_t>(tau_m) + 2, 0);
  for (int u : record_until) ++record_hist[static_cast<std::size_t>(std::min(u, tau_m) + 1)];

  BiasCurve curve;
  curve.kind = BiasKind::Sampling;
  std::int64_t domains = static_cast<std::int64_t>(graph.domain_vertices().size());
  std::int64_t records = static_cast<std::int64_t>(graph.record_vertices().size());
  std::int64_t edges = static_cast<std::int64_t>(graph.edges().size());
  for (int tau = 1; tau <= tau_m; ++tau) {
    domains -= domain_hist[static_cast<std::size_t>(tau)];
    records -= record_hist[static_cast<std::size_t>(tau)];
    edges -= edge_hist[static_cast<std::size_t>(tau)];
    curve.steps.push_back({tau, domains, records, edges,
                           step_density(domains, records, edges)});
  }
  return curve;
}

BipartiteDnsGraph sampling_snapshot(const BipartiteDnsGraph& graph,
                                    const std::vector<MetricSeries>& series, int tau) {
  if (tau < 1) throw ConfigError("tau must be >= 1");
  const std::vector<int> pass_until = unique_value_counts(graph, series);
  BipartiteDnsGraph reduced(graph.rtype());
  for (const auto& e : graph.edges()) {
    if (pass_until[e.domain] < tau) continue;
    reduced.observe(graph.domain_vertices()[e.domain],
                    graph.record_vertices()[e.record], e.birth);
  }
  return reduced;
}

void write_bias_csv(std::ostream& out, const BiasCurve& curve) {
  out << "step,domains,records,edges,density\n";
  for (const auto& s : curve.steps) {
    out << s.index << ',' << s.domain_count << ',' << s.record_count << ','
        << s.edge_count << ',' << to_decimal(s.density, 6) << "\n";
  }
}

}  // namespace agility
