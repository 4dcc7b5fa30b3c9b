#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bufsim/buffer.hpp"
#include "bufsim/thresholds.hpp"

namespace bufsim {

// Work meter for the constant-time admission claim. Reset per event;
// decisions and bookkeeping updates bump it as they go.
struct OpCounters {
  std::int64_t comparisons = 0;
  std::int64_t increments = 0;

  void reset() { comparisons = increments = 0; }
  std::int64_t total() const { return comparisons + increments; }
};

// Incremental occupancy statistics backing the modified harmonic decision.
//
// counts_ge_[v] is the number of queues with occupancy >= v, for v in
// 1..U_1. An admission changes exactly one entry (the new occupancy) and a
// departure changes exactly one entry (the old occupancy), so maintenance is
// O(1) per packet and O(ports) per drain round. The per-threshold count the
// decision needs is at_or_above(k) = counts_ge_[U_k], and the eligible
// threshold index for a queue is a table lookup on its occupancy.
class HarmonicBookkeeping {
 public:
  explicit HarmonicBookkeeping(const ThresholdTable& table)
      : table_(&table),
        counts_ge_(static_cast<std::size_t>(table.max_queue()) + 1, 0) {}

  // Count of queues with occupancy >= U_k.
  std::int64_t at_or_above(int k) const {
    return counts_ge_[static_cast<std::size_t>(table_->ceil_threshold(k))];
  }

  // Count of queues with occupancy >= v, for integer v in [1, U_1].
  std::int64_t count_ge(std::int64_t v) const {
    return counts_ge_[static_cast<std::size_t>(v)];
  }

  // Call after state.admit(port); `state` already reflects the admission.
  void on_admit(const BufferState& state, int port, OpCounters* ops) {
    const std::int64_t now = state.occupancy(port);
    if (ops != nullptr) {
      ++ops->comparisons;
      ++ops->increments;
    }
    if (now > table_->max_queue()) {
      throw ConsistencyViolation("occupancy above U_1 under harmonic bookkeeping");
    }
    ++counts_ge_[static_cast<std::size_t>(now)];
  }

  // Call after a drain round; `ports` are the ports that transmitted and
  // `state` already reflects the departures.
  void on_drain(const BufferState& state, std::span<const int> ports, OpCounters* ops) {
    for (int port : ports) {
      const std::int64_t before = state.occupancy(port) + 1;
      if (ops != nullptr) {
        ++ops->increments;
      }
      --counts_ge_[static_cast<std::size_t>(before)];
    }
  }

  // From-scratch rebuild; the coherence tests compare this against the
  // incrementally maintained instance after every event.
  static HarmonicBookkeeping recompute(const ThresholdTable& table, const BufferState& state) {
    HarmonicBookkeeping bk(table);
    for (int port = 1; port <= state.ports(); ++port) {
      const std::int64_t occ = state.occupancy(port);
      for (std::int64_t v = 1; v <= occ && v <= table.max_queue(); ++v) {
        ++bk.counts_ge_[static_cast<std::size_t>(v)];
      }
    }
    return bk;
  }

  bool operator==(const HarmonicBookkeeping& other) const {
    return counts_ge_ == other.counts_ge_;
  }

  const std::vector<std::int64_t>& counts() const { return counts_ge_; }

  class ConsistencyViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
  };

 private:
  const ThresholdTable* table_;
  std::vector<std::int64_t> counts_ge_;
};

}  // namespace bufsim
