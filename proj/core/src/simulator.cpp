#include "bufsim/simulator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bufsim {

namespace {

void require_valid(const Trace& trace) {
  const ValidationReport report = validate_trace(trace);
  if (!report.ok()) {
    throw std::invalid_argument("invalid trace: " + report.violations.front());
  }
}

// One clock shared by every engine: boundary drains at t = 1, 2, ... before
// that slot's arrivals, then drain rounds until the caller reports empty.
template <typename BoundaryFn, typename ArrivalFn, typename EmptyFn>
void drive(const Trace& trace, BoundaryFn&& boundary, ArrivalFn&& arrival, EmptyFn&& empty) {
  const auto& packets = trace.packets;
  const std::int64_t last_slot = packets.empty() ? -1 : packets.back().slot;
  std::size_t i = 0;
  for (std::int64_t slot = 0; slot <= last_slot; ++slot) {
    if (slot > 0) boundary(slot);
    while (i < packets.size() && packets[i].slot == slot) {
      arrival(packets[i]);
      ++i;
    }
  }
  std::int64_t t = std::max<std::int64_t>(last_slot, 0);
  while (!empty()) {
    boundary(++t);
  }
}

// Shared result bookkeeping so standalone, lockstep, and replay runs fill
// SimResult fields identically.
struct Accumulator {
  SimResult result;
  bool record_timeline = false;
  std::int64_t event_seq = 0;

  void init(std::size_t packet_count, bool timeline) {
    result.decisions.assign(packet_count, Decision{});
    record_timeline = timeline;
  }

  void on_arrival(const Packet& p, const Decision& d, std::int64_t occ_before,
                  const OpCounters* ops) {
    result.decisions[static_cast<std::size_t>(p.id)] = d;
    if (d.accept) {
      ++result.accepted;
    } else {
      ++result.rejected;
      switch (d.cause) {
        case RejectCause::NoThreshold: ++result.no_threshold_rejections; break;
        case RejectCause::Threshold: ++result.threshold_rejections; break;
        case RejectCause::CapacityGuard: ++result.guard_rejections; break;
        case RejectCause::None: break;
      }
    }
    if (ops != nullptr) {
      result.max_arrival_ops = std::max(result.max_arrival_ops, ops->total());
      result.total_comparisons += ops->comparisons;
      result.total_increments += ops->increments;
    }
    if (record_timeline) {
      result.timeline.push_back({event_seq, p.slot, Phase::Arrivals, p.port, occ_before,
                                 d.accept ? 1 : 0, d.cause, p.id});
    }
    ++event_seq;
  }

  void on_drain(std::int64_t boundary, const std::vector<int>& ports,
                const std::vector<std::int64_t>& occ_before, const OpCounters* ops) {
    result.transmitted += static_cast<std::int64_t>(ports.size());
    if (ops != nullptr) {
      result.max_drain_round_ops = std::max(result.max_drain_round_ops, ops->total());
      result.total_comparisons += ops->comparisons;
      result.total_increments += ops->increments;
    }
    if (record_timeline) {
      for (int port : ports) {
        result.timeline.push_back({event_seq, boundary, Phase::Transmit, port,
                                   occ_before[static_cast<std::size_t>(port - 1)], -1,
                                   RejectCause::None, -1});
      }
    }
    ++event_seq;
  }
};

}  // namespace

SimResult simulate(const Trace& trace, AdmissionPolicy& policy, const SimOptions& options) {
  require_valid(trace);
  BufferState state(trace.config.ports, trace.config.capacity);
  Accumulator acc;
  acc.init(trace.packets.size(), options.record_timeline);

  std::vector<int> drained;
  std::vector<std::int64_t> occ_before;
  drive(
      trace,
      [&](std::int64_t t) {
        if (options.record_timeline) occ_before = state.occupancies();
        drained.clear();
        state.drain_into(drained);
        policy.on_drain(state, drained);
        acc.on_drain(t, drained, occ_before, policy.last_drain_ops());
      },
      [&](const Packet& p) {
        const std::int64_t occ = state.occupancy(p.port);
        const Decision d = policy.decide(state, p);
        if (d.accept) {
          state.admit(p.port);
          policy.on_admit(state, p.port);
        }
        acc.on_arrival(p, d, occ, policy.last_arrival_ops());
      },
      [&] { return state.total() == 0; });

  if (acc.result.accepted != acc.result.transmitted + state.total()) {
    throw std::logic_error("conservation broken: accepted != transmitted + buffered");
  }
  return std::move(acc.result);
}

ReplayResult replay_acceptance(const Trace& trace, const std::vector<bool>& accept) {
  require_valid(trace);
  if (accept.size() != trace.packets.size()) {
    throw std::invalid_argument("acceptance vector length != trace length");
  }
  ReplayResult replay;
  BufferState state(trace.config.ports, trace.config.capacity);
  Accumulator acc;
  acc.init(trace.packets.size(), false);

  std::vector<int> drained;
  drive(
      trace,
      [&](std::int64_t t) {
        drained.clear();
        state.drain_into(drained);
        acc.on_drain(t, drained, {}, nullptr);
      },
      [&](const Packet& p) {
        bool take = accept[static_cast<std::size_t>(p.id)];
        if (take && state.full()) {
          // Accepting into a full buffer: flag it and drop the packet so the
          // rest of the vector can still be assessed.
          if (replay.feasible) {
            replay.feasible = false;
            replay.first_violation_id = p.id;
          }
          take = false;
        }
        const std::int64_t occ = state.occupancy(p.port);
        if (take) state.admit(p.port);
        acc.on_arrival(p, take ? accept_decision() : Decision{false, RejectCause::None, 0}, occ,
                       nullptr);
      },
      [&] { return state.total() == 0; });

  replay.result = std::move(acc.result);
  return replay;
}

LockstepResult simulate_lockstep(const Trace& trace, AdmissionPolicy& policy,
                                 const std::vector<bool>& accept) {
  require_valid(trace);
  if (accept.size() != trace.packets.size()) {
    throw std::invalid_argument("acceptance vector length != trace length");
  }
  const int ports = trace.config.ports;
  const std::int64_t capacity = trace.config.capacity;

  BufferState state_a(ports, capacity);
  FifoBuffer fifo_a(ports, capacity);
  FifoBuffer fifo_b(ports, capacity);

  LockstepResult out;
  Accumulator acc_a;
  Accumulator acc_b;
  acc_a.init(trace.packets.size(), false);
  acc_b.init(trace.packets.size(), false);

  std::vector<int> drained_a;
  std::vector<std::pair<int, std::int64_t>> popped;
  drive(
      trace,
      [&](std::int64_t t) {
        drained_a.clear();
        state_a.drain_into(drained_a);
        policy.on_drain(state_a, drained_a);
        popped.clear();
        fifo_a.drain_into(popped);  // keeps identities aligned with state_a

        LockstepDrain round;
        round.boundary = t;
        round.ports_a = drained_a;
        popped.clear();
        fifo_b.drain_into(popped);
        round.ports_b.reserve(popped.size());
        for (const auto& [port, id] : popped) round.ports_b.push_back(port);

        acc_a.on_drain(t, round.ports_a, {}, policy.last_drain_ops());
        acc_b.on_drain(t, round.ports_b, {}, nullptr);
        out.events.emplace_back(std::move(round));
      },
      [&](const Packet& p) {
        LockstepArrival ev;
        ev.packet = p;
        ev.occ_before_a = state_a.occupancy(p.port);
        ev.occ_before_b = fifo_b.occupancy(p.port);
        ev.decision_a = policy.decide(state_a, p);
        ev.accepted_b = accept[static_cast<std::size_t>(p.id)];
        if (ev.accepted_b && fifo_b.total() >= capacity) {
          throw InfeasibleVector("acceptance vector admits packet " + std::to_string(p.id) +
                                 " into a full buffer");
        }
        if (ev.decision_a.accept) {
          state_a.admit(p.port);
          fifo_a.admit(p.port, p.id);
          policy.on_admit(state_a, p.port);
        }
        if (ev.accepted_b) {
          fifo_b.admit(p.port, p.id);
        }
        acc_a.on_arrival(p, ev.decision_a, ev.occ_before_a, policy.last_arrival_ops());
        acc_b.on_arrival(p, ev.accepted_b ? accept_decision() : Decision{false, RejectCause::None, 0},
                         ev.occ_before_b, nullptr);
        out.events.emplace_back(std::move(ev));
      },
      [&] { return state_a.total() == 0 && fifo_b.total() == 0; });

  out.result_a = std::move(acc_a.result);
  out.result_b = std::move(acc_b.result);
  return out;
}

LockstepReplay::LockstepReplay(const Trace& trace, const LockstepResult& result)
    : events_(&result.events),
      a_(trace.config.ports, trace.config.capacity),
      b_(trace.config.ports, trace.config.capacity) {}

bool LockstepReplay::next() {
  ++index_;
  if (index_ >= events_->size()) return false;
  const LockstepEvent& ev = (*events_)[index_];
  if (const auto* arrival = std::get_if<LockstepArrival>(&ev)) {
    if (arrival->decision_a.accept) a_.admit(arrival->packet.port, arrival->packet.id);
    if (arrival->accepted_b) b_.admit(arrival->packet.port, arrival->packet.id);
  } else {
    std::vector<std::pair<int, std::int64_t>> popped;
    a_.drain_into(popped);
    popped.clear();
    b_.drain_into(popped);
  }
  return true;
}

DifferentialReport differential(const Trace& trace) {
  require_valid(trace);
  HarmonicPolicy harmonic(trace.config);
  ModifiedHarmonicPolicy modified(trace.config);

  BufferState state_h(trace.config.ports, trace.config.capacity);
  BufferState state_m(trace.config.ports, trace.config.capacity);
  Accumulator acc_h;
  Accumulator acc_m;
  acc_h.init(trace.packets.size(), false);
  acc_m.init(trace.packets.size(), false);

  DifferentialReport report;
  std::vector<int> drained;
  drive(
      trace,
      [&](std::int64_t t) {
        drained.clear();
        state_h.drain_into(drained);
        harmonic.on_drain(state_h, drained);
        acc_h.on_drain(t, drained, {}, harmonic.last_drain_ops());
        drained.clear();
        state_m.drain_into(drained);
        modified.on_drain(state_m, drained);
        acc_m.on_drain(t, drained, {}, modified.last_drain_ops());
      },
      [&](const Packet& p) {
        const std::int64_t occ_h = state_h.occupancy(p.port);
        const std::int64_t occ_m = state_m.occupancy(p.port);
        const Decision dh = harmonic.decide(state_h, p);
        const Decision dm = modified.decide(state_m, p);
        if (report.agree && dh.accept != dm.accept) {
          report.agree = false;
          report.first_divergence_id = p.id;
          report.harmonic_decision = dh;
          report.modified_decision = dm;
          report.occ_harmonic = state_h.occupancies();
          report.occ_modified = state_m.occupancies();
        }
        if (dh.accept) {
          state_h.admit(p.port);
          harmonic.on_admit(state_h, p.port);
        }
        if (dm.accept) {
          state_m.admit(p.port);
          modified.on_admit(state_m, p.port);
        }
        acc_h.on_arrival(p, dh, occ_h, harmonic.last_arrival_ops());
        acc_m.on_arrival(p, dm, occ_m, modified.last_arrival_ops());
      },
      [&] { return state_h.total() == 0 && state_m.total() == 0; });

  report.harmonic_result = std::move(acc_h.result);
  report.modified_result = std::move(acc_m.result);
  return report;
}

}  // namespace bufsim
