#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "bufsim/buffer.hpp"
#include "bufsim/policies.hpp"
#include "bufsim/types.hpp"

namespace bufsim {

// Optional per-event record for the timeline CSV.
struct TimelineRow {
  std::int64_t event = 0;  // global event sequence number
  std::int64_t slot = 0;   // arrival slot, or boundary time for transmits
  Phase phase = Phase::Arrivals;
  int port = 0;
  std::int64_t occ_before = 0;
  int decision = -1;  // 1 accept, 0 reject, -1 not applicable (transmit)
  RejectCause cause = RejectCause::None;
  std::int64_t packet_id = -1;
};

struct SimOptions {
  bool record_timeline = false;
};

struct SimResult {
  std::vector<Decision> decisions;  // indexed by packet id
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  std::int64_t transmitted = 0;
  std::int64_t guard_rejections = 0;
  std::int64_t threshold_rejections = 0;
  std::int64_t no_threshold_rejections = 0;

  // Work aggregates for instrumented policies; zero otherwise.
  std::int64_t max_arrival_ops = 0;
  std::int64_t max_drain_round_ops = 0;
  std::int64_t total_comparisons = 0;
  std::int64_t total_increments = 0;

  std::vector<TimelineRow> timeline;

  std::int64_t throughput() const { return accepted; }
};

// Runs the trace through the policy: departures fire at every integer
// boundary t = 1, 2, ... before that slot's arrivals; after the last
// arrival slot the buffer drains to empty. Throughput equals acceptances
// because every buffered packet eventually transmits.
SimResult simulate(const Trace& trace, AdmissionPolicy& policy, const SimOptions& options = {});

// Replays a fixed accept/reject vector through the same clock. Infeasible
// means some accepted packet arrives while the buffer is full.
struct ReplayResult {
  bool feasible = true;
  std::int64_t first_violation_id = -1;
  SimResult result;
};

ReplayResult replay_acceptance(const Trace& trace, const std::vector<bool>& accept);

// Lockstep run of a live policy ("a") against a fixed acceptance vector
// ("b") under one clock, with identity-tracking buffers on both sides.
struct LockstepArrival {
  Packet packet;
  std::int64_t occ_before_a = 0;  // arriving port, policy buffer
  std::int64_t occ_before_b = 0;  // arriving port, vector buffer
  Decision decision_a;
  bool accepted_b = false;
};

struct LockstepDrain {
  std::int64_t boundary = 0;  // the integer time t of this drain round
  std::vector<int> ports_a;
  std::vector<int> ports_b;
};

using LockstepEvent = std::variant<LockstepArrival, LockstepDrain>;

class InfeasibleVector : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LockstepResult {
  SimResult result_a;
  SimResult result_b;
  std::vector<LockstepEvent> events;
};

// Throws InfeasibleVector if the vector accepts into a full buffer.
LockstepResult simulate_lockstep(const Trace& trace, AdmissionPolicy& policy,
                                 const std::vector<bool>& accept);

// Steps through a lockstep event log rebuilding both FIFO buffers, so a
// consumer can inspect full queue contents (packet ids) after every event.
class LockstepReplay {
 public:
  LockstepReplay(const Trace& trace, const LockstepResult& result);

  bool next();  // advance one event; false when exhausted
  const LockstepEvent& event() const { return (*events_)[index_]; }
  const FifoBuffer& buffer_a() const { return a_; }
  const FifoBuffer& buffer_b() const { return b_; }

 private:
  const std::vector<LockstepEvent>* events_;
  std::size_t index_ = static_cast<std::size_t>(-1);
  FifoBuffer a_;
  FifoBuffer b_;
};

// Runs the prefix-budget and threshold forms side by side on their own
// buffers and reports the first packet where the decisions differ.
struct DifferentialReport {
  bool agree = true;
  std::int64_t first_divergence_id = -1;
  Decision harmonic_decision;
  Decision modified_decision;
  std::vector<std::int64_t> occ_harmonic;  // pre-arrival occupancies at divergence
  std::vector<std::int64_t> occ_modified;
  SimResult harmonic_result;
  SimResult modified_result;
};

DifferentialReport differential(const Trace& trace);

}  // namespace bufsim
