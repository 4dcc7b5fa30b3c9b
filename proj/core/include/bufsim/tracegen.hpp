#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bufsim/types.hpp"

namespace bufsim {

// Workload families. All randomness comes from the GenSpec seed through a
// fixed generator, so equal GenSpecs reproduce the same trace bytes everywhere.
enum class GenKind : std::uint8_t {
  Uniform,           // per slot and port, small binomial batches sized by load
  Flood,             // saturate one port, then burst every port at once
  OnOff,             // bursty on/off phases on rotating ports
  AdversarialShift,  // overload port 1, then 2, ... to punish static splits
  Enumerate,         // exhaustive family; see TraceEnumerator
};

std::string_view to_string(GenKind kind);
bool parse_gen_kind(std::string_view text, GenKind& out);

struct GenSpec {
  GenKind kind = GenKind::Uniform;
  SwitchConfig config;
  std::int64_t length = 1;   // slots (uniform/onoff), phase length (flood/shift), packets (enumerate)
  std::uint64_t seed = 0;
  double load = 1.0;         // mean arrivals per slot across the switch (uniform/onoff)
  int target_port = 1;       // flood victim
  std::int64_t burst_len = 0;  // flood/onoff phase length; 0 picks a default
};

// Deterministic: equal specs produce byte-identical traces. Enumerate is a
// family, not a single trace, and is rejected here; use TraceEnumerator.
Trace generate(const GenSpec& spec);

// All traces with at most `max_packets` arrivals placed in slots
// 0..max_slots-1. Within a slot arrivals are emitted in the order listed,
// and distinct orders are distinct traces, so for m packets there are
// C(m + max_slots - 1, max_slots - 1) * ports^m of length m. Enumeration
// order is by length, then slot pattern, then ports, lexicographically.
class TraceEnumerator {
 public:
  TraceEnumerator(const SwitchConfig& config, int max_slots, int max_packets,
                  bool exact_length = false);

  bool next(Trace& out);

 private:
  bool advance();

  SwitchConfig config_;
  int max_slots_;
  int max_packets_;
  bool exact_;
  int length_ = 0;
  bool fresh_length_ = true;
  bool done_ = false;
  std::vector<int> slots_;  // nondecreasing slot per packet
  std::vector<int> ports_;  // port per packet
};

// Closed-form count of the traces TraceEnumerator yields (<= max_packets).
std::uint64_t enumeration_count(int ports, int max_slots, int max_packets);

}  // namespace bufsim
