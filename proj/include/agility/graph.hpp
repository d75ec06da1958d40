#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "agility/rational.hpp"
#include "agility/trace.hpp"

namespace agility {

/// Undirected bipartite graph of domains and addresses with birth-round
/// bookkeeping for vertices and edges. Vertex and edge vectors preserve
/// insertion order of the dynamic build.
class BipartiteDnsGraph {
 public:
  struct Edge {
    std::uint32_t domain;  // index into domain_vertices()
    std::uint32_t record;  // index into record_vertices()
    int birth;             // first round this pair was observed
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  explicit BipartiteDnsGraph(RecordType t = RecordType::A) : rtype_(t) {}

  RecordType rtype() const { return rtype_; }
  const std::vector<std::string>& domain_vertices() const { return domains_; }
  const std::vector<std::string>& record_vertices() const { return records_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Birth round of the i:th record vertex (the bookkeeping set).
  const std::vector<int>& record_births() const { return record_births_; }
  /// First round each domain vertex resolved non-empty.
  const std::vector<int>& domain_births() const { return domain_births_; }

  std::optional<std::uint32_t> domain_index(const std::string& d) const;
  std::optional<std::uint32_t> record_index(const std::string& r) const;

  /// Adds the observation of one (domain, address) pair at `round`; creates
  /// missing vertices with birth = round, ignores already-known edges.
  void observe(const std::string& domain, const std::string& address, int round);

  std::size_t degree_of_domain(std::uint32_t idx) const;
  std::size_t degree_of_record(std::uint32_t idx) const;

  friend bool operator==(const BipartiteDnsGraph& a, const BipartiteDnsGraph& b) {
    return a.rtype_ == b.rtype_ && a.domains_ == b.domains_ &&
           a.records_ == b.records_ && a.edges_ == b.edges_ &&
           a.record_births_ == b.record_births_ && a.domain_births_ == b.domain_births_;
  }

 private:
  RecordType rtype_;
  std::vector<std::string> domains_;
  std::vector<std::string> records_;
  std::vector<int> domain_births_;
  std::vector<int> record_births_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::uint32_t> domain_idx_;
  std::unordered_map<std::string, std::uint32_t> record_idx_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_idx_;  // (d << 32 | r)
};

/// Processes rounds in ascending order, adding vertices and edges as they
/// are first observed. Domains that never resolve contribute no vertices.
BipartiteDnsGraph build_graph(const ResolutionTrace& trace);

/// Removes every degree-zero vertex on either side; edges unchanged.
/// Idempotent.
BipartiteDnsGraph prune_isolated(const BipartiteDnsGraph& graph);

/// |E| / (|V_D| * |V_R|); 0 when either side is empty.
Rational density(const BipartiteDnsGraph& graph);

struct DescriptiveStats {
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  Rational density{0};
  std::int64_t domain_count = 0;
  std::int64_t record_count = 0;
  /// |V_D| / |V_R| * 100; nullopt when |V_R| = 0.
  std::optional<Rational> domain_record_share;
};

DescriptiveStats descriptive_stats(const BipartiteDnsGraph& graph);

/// Edge-list CSV (domain,address,edge_birth) and vertex CSV
/// (label,side,birth). Importing the pair reconstructs the graph exactly,
/// insertion order and birth maps included.
void write_graph_edges_csv(std::ostream& out, const BipartiteDnsGraph& graph);
void write_graph_vertices_csv(std::ostream& out, const BipartiteDnsGraph& graph);
BipartiteDnsGraph read_graph_csv(std::istream& vertices, std::istream& edges,
                                 RecordType rtype);

}  // namespace agility
