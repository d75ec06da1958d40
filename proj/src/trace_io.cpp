#include "agility/trace_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace agility {

namespace {

using Json = nlohmann::ordered_json;

Json header_json(const ResolutionTrace& trace) {
  Json h;
  h["q"] = trace.rounds;
  h["domains"] = trace.domains.size();
  h["resolver"] = trace.meta.resolver;
  h["delay_minutes"] = trace.meta.delay_minutes;
  h["aggregated"] = trace.meta.aggregated;
  return h;
}

Json observation_json(const RoundObservation& obs) {
  Json o;
  o["round"] = obs.round;
  o["ts"] = obs.timestamp;
  o["domain"] = obs.domain;
  o["rtype"] = to_string(obs.records.rtype());
  o["status"] = to_string(obs.status.kind);
  o["records"] = obs.records.records();
  return o;
}

Json parse_line(const std::string& line, std::size_t line_number) {
  try {
    return Json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_number, std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const Json& obj, const char* key, std::size_t line_number) {
  if (!obj.contains(key)) {
    throw ParseError(line_number, std::string("missing key \"") + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(line_number, std::string("bad value for key \"") + key + "\"");
  }
}

}  // namespace

void write_trace(std::ostream& out, const ResolutionTrace& trace) {
  out << header_json(trace).dump() << "\n";
  for (const auto& obs : trace.observations) {
    out << observation_json(obs).dump() << "\n";
  }
}

void write_trace_file(const std::string& path, const ResolutionTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  write_trace(out, trace);
}

ResolutionTrace read_trace(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;

  if (!std::getline(in, line)) throw ParseError(1, "missing header line");
  ++line_number;
  Json header = parse_line(line, line_number);

  ResolutionTrace trace;
  trace.rounds = field<int>(header, "q", line_number);
  const auto domain_count = field<std::size_t>(header, "domains", line_number);
  trace.meta.resolver = field<std::string>(header, "resolver", line_number);
  trace.meta.delay_minutes = field<double>(header, "delay_minutes", line_number);
  trace.meta.aggregated = field<bool>(header, "aggregated", line_number);

  bool rtype_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() && in.eof()) break;
    Json o = parse_line(line, line_number);

    RoundObservation obs;
    obs.round = field<int>(o, "round", line_number);
    obs.timestamp = field<std::int64_t>(o, "ts", line_number);
    obs.domain = field<std::string>(o, "domain", line_number);
    const auto rtype = record_type_from_string(field<std::string>(o, "rtype", line_number));
    if (!rtype_seen) {
      trace.rtype = rtype;
      rtype_seen = true;
    } else if (rtype != trace.rtype) {
      throw ParseError(line_number, "record type changes mid-trace");
    }
    try {
      obs.status.kind = status_kind_from_string(field<std::string>(o, "status", line_number));
    } catch (const DataError& e) {
      throw ParseError(line_number, e.what());
    }
    obs.records = RecordSet(rtype);
    for (const auto& addr : field<std::vector<std::string>>(o, "records", line_number)) {
      try {
        obs.records.insert(addr);
      } catch (const DataError& e) {
        throw ParseError(line_number, e.what());
      }
    }
    if (obs.round < 1) throw ParseError(line_number, "round must be >= 1");
    if (obs.timestamp <= 0) throw ParseError(line_number, "ts must be positive");

    // First round fixes the domain order; later rounds must repeat it.
    if (obs.round == 1) trace.domains.push_back(obs.domain);
    trace.observations.push_back(std::move(obs));
  }

  if (trace.domains.size() != domain_count) {
    throw DataError("header declares " + std::to_string(domain_count) +
                    " domains, body has " + std::to_string(trace.domains.size()));
  }
  try {
    trace.validate();
  } catch (const DataError& e) {
    throw DataError(std::string("inconsistent trace: ") + e.what());
  }
  return trace;
}

ResolutionTrace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open trace file: " + path);
  return read_trace(in);
}

std::vector<std::string> read_domain_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open domain list: " + path);
  std::vector<std::string> domains;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    domains.push_back(line.substr(begin, end - begin + 1));
  }
  return domains;
}

}  // namespace agility
