// dnsagility: measure DNS agility from live polling, replayed, or simulated
// resolution traces; export per-domain metrics, bipartite domain-address
// graphs, and learning/sampling bias curves as plot-ready CSV.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "agility/bias.hpp"
#include "agility/graph.hpp"
#include "agility/metrics.hpp"
#include "agility/resolver.hpp"
#include "agility/simulator.hpp"
#include "agility/trace_io.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNetwork = 3;

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw agility::DataError("cannot open input: " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// Every CSV we emit starts with a provenance comment so figure-feeding
// files are self-describing.
std::string provenance(const std::string& input_path, const std::string& params) {
  std::ostringstream out;
  out << "# dnsagility " << kVersion << " input_digest=" << std::hex
      << fnv1a_file(input_path) << std::dec;
  if (!params.empty()) out << " " << params;
  out << "\n";
  return out.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw agility::DataError("cannot open for writing: " + path);
  return out;
}

void print_stats(std::ostream& out, const agility::DescriptiveStats& s,
                 agility::RecordType rtype) {
  out << "rtype " << agility::to_string(rtype) << "\n";
  out << "vertices " << s.vertices << "\n";
  out << "edges " << s.edges << "\n";
  out << "density " << agility::to_decimal(s.density) << "\n";
  out << "domains " << s.domain_count << "\n";
  out << "records " << s.record_count << "\n";
  if (s.domain_record_share) {
    out << "domain_record_share_pct " << agility::to_decimal(*s.domain_record_share, 1)
        << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"DNS agility measurement toolkit"};
  app.require_subcommand(1);

  // resolve
  auto* resolve = app.add_subcommand("resolve", "poll live DNS into a trace file");
  std::string domains_path, out_path, out_path_aaaa;
  agility::ResolverConfig rconfig;
  const char* env_resolver = std::getenv("DNSAGILITY_RESOLVER");
  rconfig.resolver_address = env_resolver ? env_resolver : "";
  rconfig.rounds = 3000;
  rconfig.delay_minutes = 1.0;
  bool want_a = false, want_aaaa = false;
  resolve->add_option("--domains", domains_path, "domain list, one FQDN per line")
      ->required();
  resolve->add_option("--out", out_path, "output trace file (A records)")->required();
  resolve->add_option("--out-aaaa", out_path_aaaa, "output trace file (AAAA records)");
  resolve->add_option("--resolver", rconfig.resolver_address,
                      "upstream resolver IP (default $DNSAGILITY_RESOLVER)");
  resolve->add_option("--port", rconfig.resolver_port, "resolver port");
  resolve->add_option("--rounds", rconfig.rounds, "resolving rounds q");
  resolve->add_option("--delay", rconfig.delay_minutes, "minutes between rounds");
  resolve->add_option("--timeout", rconfig.per_query_timeout_seconds,
                      "per-query timeout in seconds");
  resolve->add_option("--parallelism", rconfig.parallelism, "max in-flight queries");
  resolve->add_option("--label", rconfig.resolver_label, "resolver label for metadata");
  resolve->add_flag("--aggregate", rconfig.aggregate,
                    "truncate domains to the 2nd highest level");
  resolve->add_flag("--ipv4", want_a, "query A records (default)");
  resolve->add_flag("--ipv6", want_aaaa, "query AAAA records");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "generate a synthetic trace");
  std::string scenario_path, sim_out;
  simulate->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  simulate->add_option("--out", sim_out, "output trace file")->required();

  // metrics
  auto* metrics = app.add_subcommand("metrics", "per-domain fluxiness/cumulative CSV");
  std::string metrics_trace, metrics_out;
  metrics->add_option("--trace", metrics_trace, "input trace file")->required();
  metrics->add_option("--out", metrics_out, "output CSV")->required();

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "learned-graph export plus stats");
  std::string graph_trace, graph_out_prefix;
  graph_cmd->add_option("--trace", graph_trace, "input trace file")->required();
  graph_cmd->add_option("--out-prefix", graph_out_prefix,
                        "writes <prefix>.vertices.csv and <prefix>.edges.csv")
      ->required();

  // learning-bias
  auto* learning = app.add_subcommand("learning-bias", "per-round reduction curve");
  std::string lb_trace, lb_out;
  bool strict_eq10 = false;
  learning->add_option("--trace", lb_trace, "input trace file")->required();
  learning->add_option("--out", lb_out, "output CSV")->required();
  learning->add_flag("--strict-eq10", strict_eq10,
                     "drop only late-born record vertices, keep late edges");

  // sampling-bias
  auto* sampling = app.add_subcommand("sampling-bias", "per-threshold exclusion curve");
  std::string sb_trace, sb_out;
  sampling->add_option("--trace", sb_trace, "input trace file")->required();
  sampling->add_option("--out", sb_out, "output CSV")->required();

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "summary of an exported graph");
  std::string stats_prefix, stats_rtype = "A";
  stats_cmd->add_option("--in-prefix", stats_prefix,
                        "reads <prefix>.vertices.csv and <prefix>.edges.csv")
      ->required();
  stats_cmd->add_option("--rtype", stats_rtype, "record type of the graph (A|AAAA)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*resolve) {
      if (rconfig.resolver_address.empty()) {
        std::cerr << "no resolver address: pass --resolver or set "
                     "DNSAGILITY_RESOLVER\n";
        return kExitUsage;
      }
      rconfig.rtypes.clear();
      if (want_a || !want_aaaa) rconfig.rtypes.insert(agility::RecordType::A);
      if (want_aaaa) rconfig.rtypes.insert(agility::RecordType::AAAA);
      if (rconfig.rtypes.count(agility::RecordType::AAAA) && out_path_aaaa.empty() &&
          rconfig.rtypes.size() == 2) {
        std::cerr << "--out-aaaa is required when both record types are queried\n";
        return kExitUsage;
      }
      const auto domains = agility::read_domain_list(domains_path);
      const auto traces = agility::poll(domains, rconfig);
      bool any_usable = false;
      for (const auto& t : traces) {
        for (const auto& o : t.observations) {
          if (o.status.kind == agility::QueryStatus::Kind::Ok) any_usable = true;
        }
        const std::string& path = t.rtype == agility::RecordType::A
                                      ? out_path
                                      : (out_path_aaaa.empty() ? out_path : out_path_aaaa);
        agility::write_trace_file(path, t);
      }
      if (!any_usable) {
        std::cerr << "no query produced a usable answer\n";
        return kExitNetwork;
      }
    } else if (*simulate) {
      const auto scenario = agility::read_scenario_file(scenario_path);
      agility::write_trace_file(sim_out, agility::simulate(scenario));
    } else if (*metrics) {
      const auto trace = agility::read_trace_file(metrics_trace);
      auto out = open_output(metrics_out);
      out << provenance(metrics_trace, "cmd=metrics");
      agility::write_metrics_csv(out, trace);
    } else if (*graph_cmd) {
      const auto trace = agility::read_trace_file(graph_trace);
      const auto graph = agility::build_graph(trace);
      {
        auto out = open_output(graph_out_prefix + ".vertices.csv");
        agility::write_graph_vertices_csv(out, graph);
      }
      {
        auto out = open_output(graph_out_prefix + ".edges.csv");
        agility::write_graph_edges_csv(out, graph);
      }
      print_stats(std::cout, agility::descriptive_stats(graph), graph.rtype());
    } else if (*learning) {
      const auto trace = agility::read_trace_file(lb_trace);
      const auto graph = agility::build_graph(trace);
      const auto curve = agility::learning_bias(graph, trace.rounds, strict_eq10);
      auto out = open_output(lb_out);
      out << provenance(lb_trace, std::string("cmd=learning-bias strict_eq10=") +
                                      (strict_eq10 ? "true" : "false"));
      agility::write_bias_csv(out, curve);
    } else if (*sampling) {
      const auto trace = agility::read_trace_file(sb_trace);
      const auto graph = agility::build_graph(trace);
      const auto curve = agility::sampling_bias(graph, agility::all_metric_series(trace));
      auto out = open_output(sb_out);
      out << provenance(sb_trace, "cmd=sampling-bias");
      agility::write_bias_csv(out, curve);
    } else if (*stats_cmd) {
      std::ifstream vin(stats_prefix + ".vertices.csv");
      std::ifstream ein(stats_prefix + ".edges.csv");
      if (!vin || !ein) {
        throw agility::DataError("cannot open graph CSVs with prefix " + stats_prefix);
      }
      const auto rtype = agility::record_type_from_string(stats_rtype);
      const auto graph = agility::read_graph_csv(vin, ein, rtype);
      print_stats(std::cout, agility::descriptive_stats(graph), rtype);
    }
  } catch (const agility::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const agility::AgilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
