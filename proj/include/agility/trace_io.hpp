#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "agility/trace.hpp"

namespace agility {

// Trace file format: line-delimited JSON, UTF-8, LF endings. The first line
// is a header {"q","domains","resolver","delay_minutes","aggregated"}; every
// following line is one observation {"round","ts","domain","rtype","status",
// "records"}.

void write_trace(std::ostream& out, const ResolutionTrace& trace);
void write_trace_file(const std::string& path, const ResolutionTrace& trace);

/// Parses and validates; throws ParseError with the first bad line, or
/// DataError when the header disagrees with the body.
ResolutionTrace read_trace(std::istream& in);
ResolutionTrace read_trace_file(const std::string& path);

/// Domain list: one FQDN per line, '#' comments and blank lines ignored.
std::vector<std::string> read_domain_list(const std::string& path);

}  // namespace agility
