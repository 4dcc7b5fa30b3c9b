#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bufsim {

// Switch-wide constants: number of output ports and the shared buffer
// capacity (in packets) that all output queues draw from.
struct SwitchConfig {
  int ports = 1;                 // output ports, labeled 1..ports
  std::int64_t capacity = 1;     // shared buffer capacity B

  bool valid() const { return ports >= 1 && capacity >= 1; }
};

struct Packet {
  std::int64_t id = 0;    // dense 0..m-1 in arrival order
  std::int64_t slot = 0;  // arrival slot, nondecreasing across the trace
  int port = 1;           // destination output port, 1-based
};

struct Trace {
  SwitchConfig config;
  std::vector<Packet> packets;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Structural checks: config sanity, ports in range, slots nonnegative and
// nondecreasing, ids dense in arrival order.
ValidationReport validate_trace(const Trace& trace);

}  // namespace bufsim
