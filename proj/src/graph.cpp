#include "agility/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace agility {

namespace {

std::uint64_t edge_key(std::uint32_t d, std::uint32_t r) {
  return (static_cast<std::uint64_t>(d) << 32) | r;
}

}  // namespace

std::optional<std::uint32_t> BipartiteDnsGraph::domain_index(const std::string& d) const {
  auto it = domain_idx_.find(d);
  if (it == domain_idx_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> BipartiteDnsGraph::record_index(const std::string& r) const {
  auto it = record_idx_.find(r);
  if (it == record_idx_.end()) return std::nullopt;
  return it->second;
}

void BipartiteDnsGraph::observe(const std::string& domain, const std::string& address,
                                int round) {
  std::uint32_t d;
  if (auto it = domain_idx_.find(domain); it != domain_idx_.end()) {
    d = it->second;
  } else {
    d = static_cast<std::uint32_t>(domains_.size());
    domains_.push_back(domain);
    domain_births_.push_back(round);
    domain_idx_.emplace(domain, d);
  }
  std::uint32_t r;
  if (auto it = record_idx_.find(address); it != record_idx_.end()) {
    r = it->second;
  } else {
    r = static_cast<std::uint32_t>(records_.size());
    records_.push_back(address);
    record_births_.push_back(round);
    record_idx_.emplace(address, r);
  }
  if (edge_idx_.find(edge_key(d, r)) == edge_idx_.end()) {
    edge_idx_.emplace(edge_key(d, r), static_cast<std::uint32_t>(edges_.size()));
    edges_.push_back({d, r, round});
  }
}

std::size_t BipartiteDnsGraph::degree_of_domain(std::uint32_t idx) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(),
                    [idx](const Edge& e) { return e.domain == idx; }));
}

std::size_t BipartiteDnsGraph::degree_of_record(std::uint32_t idx) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(),
                    [idx](const Edge& e) { return e.record == idx; }));
}

BipartiteDnsGraph build_graph(const ResolutionTrace& trace) {
  trace.validate();
  BipartiteDnsGraph graph(trace.rtype);
  for (int round = 1; round <= trace.rounds; ++round) {
    for (std::size_t d = 0; d < trace.domains.size(); ++d) {
      const RecordSet records = effective_recordset(trace.at(d, round));
      for (const auto& address : records.records()) {
        graph.observe(trace.domains[d], address, round);
      }
    }
  }
  return graph;
}

BipartiteDnsGraph prune_isolated(const BipartiteDnsGraph& graph) {
  // Every vertex's first incident edge in insertion order carries the
  // vertex's birth (the discovering observation creates both), so replaying
  // all edges in order reproduces every surviving vertex with its original
  // birth. Isolated vertices have no edge to replay and vanish.
  BipartiteDnsGraph pruned(graph.rtype());
  for (const auto& e : graph.edges()) {
    pruned.observe(graph.domain_vertices()[e.domain], graph.record_vertices()[e.record],
                   e.birth);
  }
  return pruned;
}

Rational density(const BipartiteDnsGraph& graph) {
  const auto vd = static_cast<std::int64_t>(graph.domain_vertices().size());
  const auto vr = static_cast<std::int64_t>(graph.record_vertices().size());
  if (vd == 0 || vr == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(graph.edges().size()), vd * vr);
}

DescriptiveStats descriptive_stats(const BipartiteDnsGraph& graph) {
  DescriptiveStats s;
  s.domain_count = static_cast<std::int64_t>(graph.domain_vertices().size());
  s.record_count = static_cast<std::int64_t>(graph.record_vertices().size());
  s.vertices = s.domain_count + s.record_count;
  s.edges = static_cast<std::int64_t>(graph.edges().size());
  s.density = density(graph);
  if (s.record_count > 0) {
    s.domain_record_share = Rational(s.domain_count * 100, s.record_count);
  }
  return s;
}

void write_graph_edges_csv(std::ostream& out, const BipartiteDnsGraph& graph) {
  out << "domain,address,edge_birth\n";
  for (const auto& e : graph.edges()) {
    out << graph.domain_vertices()[e.domain] << ','
        << graph.record_vertices()[e.record] << ',' << e.birth << "\n";
  }
}

void write_graph_vertices_csv(std::ostream& out, const BipartiteDnsGraph& graph) {
  out << "label,side,birth\n";
  for (std::size_t i = 0; i < graph.domain_vertices().size(); ++i) {
    out << graph.domain_vertices()[i] << ",D," << graph.domain_births()[i] << "\n";
  }
  for (std::size_t i = 0; i < graph.record_vertices().size(); ++i) {
    out << graph.record_vertices()[i] << ",R," << graph.record_births()[i] << "\n";
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_number,
                                        std::size_t expected) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  if (fields.size() != expected) {
    throw ParseError(line_number, "expected " + std::to_string(expected) + " fields");
  }
  return fields;
}

int parse_birth(const std::string& s, std::size_t line_number) {
  try {
    return std::stoi(s);
  } catch (const std::exception&) {
    throw ParseError(line_number, "bad birth value: " + s);
  }
}

}  // namespace

BipartiteDnsGraph read_graph_csv(std::istream& vertices, std::istream& edges,
                                 RecordType rtype) {
  BipartiteDnsGraph graph(rtype);

  // Vertex file first: it fixes insertion order and births.
  std::vector<std::pair<std::string, int>> dverts, rverts;
  std::string line;
  std::size_t line_number = 1;  // header
  if (!std::getline(vertices, line) || line != "label,side,birth") {
    throw ParseError(1, "bad vertex CSV header");
  }
  while (std::getline(vertices, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto f = split_csv_line(line, line_number, 3);
    int birth = parse_birth(f[2], line_number);
    if (f[1] == "D") {
      dverts.emplace_back(f[0], birth);
    } else if (f[1] == "R") {
      rverts.emplace_back(f[0], birth);
    } else {
      throw ParseError(line_number, "side must be D or R");
    }
  }

  struct EdgeRow {
    std::string domain, address;
    int birth;
  };
  std::vector<EdgeRow> rows;
  line_number = 1;
  if (!std::getline(edges, line) || line != "domain,address,edge_birth") {
    throw ParseError(1, "bad edge CSV header");
  }
  while (std::getline(edges, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto f = split_csv_line(line, line_number, 3);
    rows.push_back({f[0], f[1], parse_birth(f[2], line_number)});
  }

  // Vertices are introduced through their discovering edge; replaying edges
  // in file order reproduces the original insertion order because exports
  // are written in insertion order. Births are cross-checked afterwards.
  for (const auto& r : rows) graph.observe(r.domain, r.address, r.birth);

  auto check = [](const std::vector<std::pair<std::string, int>>& expected,
                  const std::vector<std::string>& labels, const std::vector<int>& births,
                  const char* side) {
    if (expected.size() != labels.size()) {
      throw DataError(std::string("vertex CSV disagrees with edges on ") + side +
                      "-side count");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (expected[i].first != labels[i] || expected[i].second != births[i]) {
        throw DataError(std::string("vertex CSV disagrees with edges at ") + side +
                        " vertex " + expected[i].first);
      }
    }
  };
  check(dverts, graph.domain_vertices(), graph.domain_births(), "D");
  check(rverts, graph.record_vertices(), graph.record_births(), "R");
  return graph;
}

}  // namespace agility
