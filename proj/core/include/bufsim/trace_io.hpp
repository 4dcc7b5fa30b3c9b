#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "bufsim/types.hpp"

namespace bufsim {

class TraceIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trace files are CSV with header "slot,port", one packet per line.
// Ids are assigned 0-based in line order.
Trace read_trace_csv(std::istream& in, const SwitchConfig& config);
Trace read_trace_csv_file(const std::string& path, const SwitchConfig& config);

void write_trace_csv(std::ostream& out, const Trace& trace);
void write_trace_csv_file(const std::string& path, const Trace& trace);

// Writes via a temp file in the same directory and renames into place, so a
// crashed run never leaves a half-written file behind.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace bufsim
