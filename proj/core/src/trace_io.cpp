#include "bufsim/trace_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace bufsim {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& field, std::size_t line_no, const char* what) {
  try {
    std::size_t pos = 0;
    const std::int64_t value = std::stoll(field, &pos);
    if (pos != field.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw TraceIoError("line " + std::to_string(line_no) + ": bad " + what + " '" + field + "'");
  }
}

}  // namespace

Trace read_trace_csv(std::istream& in, const SwitchConfig& config) {
  Trace trace;
  trace.config = config;

  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip(line);
    if (body.empty()) continue;
    if (!saw_header) {
      if (body != "slot,port") {
        throw TraceIoError("line " + std::to_string(line_no) +
                           ": expected header 'slot,port', got '" + body + "'");
      }
      saw_header = true;
      continue;
    }
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) {
      throw TraceIoError("line " + std::to_string(line_no) + ": expected 'slot,port'");
    }
    Packet p;
    p.id = static_cast<std::int64_t>(trace.packets.size());
    p.slot = parse_int(strip(body.substr(0, comma)), line_no, "slot");
    p.port = static_cast<int>(parse_int(strip(body.substr(comma + 1)), line_no, "port"));
    trace.packets.push_back(p);
  }
  if (!saw_header) {
    throw TraceIoError("empty trace file: missing 'slot,port' header");
  }
  const ValidationReport report = validate_trace(trace);
  if (!report.ok()) {
    std::string message = "invalid trace:";
    for (const std::string& violation : report.violations) {
      message += ' ' + violation + ';';
    }
    message.pop_back();
    throw TraceIoError(message);
  }
  return trace;
}

Trace read_trace_csv_file(const std::string& path, const SwitchConfig& config) {
  std::ifstream in(path);
  if (!in) {
    throw TraceIoError("cannot open trace file '" + path + "'");
  }
  return read_trace_csv(in, config);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "slot,port\n";
  for (const Packet& p : trace.packets) {
    out << p.slot << ',' << p.port << '\n';
  }
}

void write_trace_csv_file(const std::string& path, const Trace& trace) {
  std::ostringstream buf;
  write_trace_csv(buf, trace);
  write_file_atomic(path, buf.str());
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw TraceIoError("cannot open '" + tmp + "' for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
      throw TraceIoError("write failed for '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw TraceIoError("rename '" + tmp + "' -> '" + path + "' failed: " +
                       std::strerror(errno));
  }
}

}  // namespace bufsim
