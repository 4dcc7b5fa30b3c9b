#include "bufsim/proofcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bufsim/oracle.hpp"
#include "bufsim/simulator.hpp"

namespace bufsim {

std::string_view to_string(PartitionClass klass) {
  switch (klass) {
    case PartitionClass::NotInOpt: return "-";
    case PartitionClass::A: return "A";
    case PartitionClass::B: return "B";
    case PartitionClass::C: return "C";
  }
  return "?";
}

std::string_view to_string(ProofEventKind kind) {
  switch (kind) {
    case ProofEventKind::ArrivalA: return "arrival-A";
    case ProofEventKind::ArrivalB: return "arrival-B";
    case ProofEventKind::ArrivalC: return "arrival-C";
    case ProofEventKind::ArrivalHarOnly: return "arrival-har-only";
    case ProofEventKind::ArrivalNeither: return "arrival-neither";
    case ProofEventKind::Drain: return "drain";
  }
  return "?";
}

std::string_view to_string(AntecedentStrategy strategy) {
  switch (strategy) {
    case AntecedentStrategy::MostRecentBuffered: return "most-recent";
    case AntecedentStrategy::EarliestBuffered: return "earliest";
  }
  return "?";
}

int matching_cap(int ports) {
  const double limit = 1.0 + std::log(static_cast<double>(ports));
  auto cap = static_cast<int>(std::floor(limit));
  if (static_cast<double>(cap) >= limit) --cap;  // strictly below
  return cap;
}

namespace {

bool is_arrival_kind(ProofEventKind kind) { return kind != ProofEventKind::Drain; }

class Checker {
 public:
  Checker(const Trace& trace, const std::vector<bool>& opt_vector,
          const ProofCheckOptions& options)
      : trace_(trace),
        options_(options),
        policy_(trace.config),
        har_(trace.config.ports, trace.config.capacity),
        opt_(trace.config.ports, trace.config.capacity) {
    const std::size_t m = trace.packets.size();
    ledger_.config = trace.config;
    ledger_.opt_source = options.opt_source;
    ledger_.antecedent = options.antecedent;
    ledger_.classes.assign(m, PartitionClass::NotInOpt);
    ledger_.antecedents.assign(m, -1);
    ledger_.match_cap = matching_cap(trace.config.ports);
    mapped_.assign(m, 0);
    har_buffered_.assign(m, 0);
    match_count_.assign(m, 0);
    mate_of_.assign(m, -1);
    unmapped_buffered_.assign(static_cast<std::size_t>(trace.config.ports), 0);

    lockstep_ = simulate_lockstep(trace_, policy_, opt_vector);
  }

  ProofLedger run() {
    for (std::size_t e = 0; e < lockstep_.events.size(); ++e) {
      event_index_ = static_cast<std::int64_t>(e);
      if (const auto* arrival = std::get_if<LockstepArrival>(&lockstep_.events[e])) {
        on_arrival(*arrival);
      } else {
        on_drain(std::get<LockstepDrain>(lockstep_.events[e]));
      }
    }
    finish();
    return std::move(ledger_);
  }

 private:
  void on_arrival(const LockstepArrival& ev) {
    const Packet& p = ev.packet;
    const auto id = static_cast<std::size_t>(p.id);

    ProofEventKind kind;
    if (ev.accepted_b && ev.decision_a.accept) {
      kind = ProofEventKind::ArrivalA;
      ledger_.classes[id] = PartitionClass::A;
    } else if (ev.accepted_b && ev.occ_before_a > ev.occ_before_b) {
      kind = ProofEventKind::ArrivalB;
      ledger_.classes[id] = PartitionClass::B;
    } else if (ev.accepted_b) {
      kind = ProofEventKind::ArrivalC;
      ledger_.classes[id] = PartitionClass::C;
    } else if (ev.decision_a.accept) {
      kind = ProofEventKind::ArrivalHarOnly;
    } else {
      kind = ProofEventKind::ArrivalNeither;
    }

    if (ev.decision_a.accept) {
      har_.admit(p.port, p.id);
      har_buffered_[id] = 1;
      ++unmapped_buffered_[static_cast<std::size_t>(p.port - 1)];
    }
    if (ev.accepted_b) {
      opt_.admit(p.port, p.id);
    }

    switch (kind) {
      case ProofEventKind::ArrivalA:
        // A-packets are their own antecedent.
        ledger_.antecedents[id] = p.id;
        mapped_[id] = 1;
        --unmapped_buffered_[static_cast<std::size_t>(p.port - 1)];
        break;
      case ProofEventKind::ArrivalB:
        assign_antecedent(p);
        break;
      case ProofEventKind::ArrivalC:
        match(p, ev);
        break;
      default:
        break;
    }

    check_gu(kind, p.slot, p.id);
  }

  void assign_antecedent(const Packet& p) {
    const auto& queue = har_.queue(p.port);
    std::int64_t candidate = -1;
    if (options_.antecedent == AntecedentStrategy::MostRecentBuffered) {
      for (auto it = queue.rbegin(); it != queue.rend(); ++it) {
        if (!mapped_[static_cast<std::size_t>(*it)]) {
          candidate = *it;
          break;
        }
      }
    } else {
      for (std::int64_t h : queue) {
        if (!mapped_[static_cast<std::size_t>(h)]) {
          candidate = h;
          break;
        }
      }
    }
    if (candidate < 0) {
      ledger_.submapping_violations.push_back(
          {p.id, p.port, surplus(p.port), unmapped_buffered_[static_cast<std::size_t>(p.port - 1)]});
      return;
    }
    if (candidate > p.id) {
      throw std::logic_error("antecedent arrived after its B-packet");
    }
    ledger_.antecedents[static_cast<std::size_t>(p.id)] = candidate;
    mapped_[static_cast<std::size_t>(candidate)] = 1;
    --unmapped_buffered_[static_cast<std::size_t>(p.port - 1)];
  }

  void match(const Packet& p, const LockstepArrival& ev) {
    // The C-packet joins OPT's queue at position occ+1; its mate must leave
    // HAR's buffer strictly earlier and still have matching capacity.
    const std::int64_t pos_p = ev.occ_before_b + 1;
    std::int64_t best = -1;
    std::int64_t best_pos = 0;
    std::int64_t best_count = 0;
    for (int q = 1; q <= trace_.config.ports; ++q) {
      const auto& queue = har_.queue(q);
      std::int64_t pos = 0;
      for (std::int64_t h : queue) {
        ++pos;
        if (pos >= pos_p) break;  // deeper entries only drain later
        const std::int64_t count = match_count_[static_cast<std::size_t>(h)];
        if (count >= ledger_.match_cap) continue;
        const bool better = best < 0 || pos < best_pos ||
                            (pos == best_pos && (count < best_count ||
                                                 (count == best_count && h < best)));
        if (better) {
          best = h;
          best_pos = pos;
          best_count = count;
        }
      }
    }
    if (best < 0) {
      MatchingViolation violation;
      violation.packet_id = p.id;
      violation.port = p.port;
      violation.har_cause = ev.decision_a.cause;
      violation.threshold_index = ev.decision_a.threshold_index;
      violation.opt_position = pos_p;
      violation.buffered_within_ceil = -1;
      if (ev.decision_a.cause == RejectCause::Threshold) {
        const std::int64_t ceil_tk = policy_.table().ceil_threshold(ev.decision_a.threshold_index);
        std::int64_t within = 0;
        for (int q = 1; q <= trace_.config.ports; ++q) {
          within += std::min<std::int64_t>(har_.occupancy(q), ceil_tk);
        }
        violation.buffered_within_ceil = within;
      }
      ledger_.matching_violations.push_back(violation);
      return;
    }
    ++match_count_[static_cast<std::size_t>(best)];
    ++ledger_.matched_count;
    ledger_.max_match_count =
        std::max<std::int64_t>(ledger_.max_match_count, match_count_[static_cast<std::size_t>(best)]);
    mate_of_[static_cast<std::size_t>(p.id)] = best;
  }

  void on_drain(const LockstepDrain& round) {
    scratch_.clear();
    har_.drain_into(scratch_);
    if (scratch_.size() != round.ports_a.size()) {
      throw std::logic_error("drain replay out of sync with recorded round");
    }
    for (const auto& [q, head] : scratch_) {
      if (!mapped_[static_cast<std::size_t>(head)]) {
        --unmapped_buffered_[static_cast<std::size_t>(q - 1)];
      }
      har_buffered_[static_cast<std::size_t>(head)] = 0;
    }

    scratch_.clear();
    opt_.drain_into(scratch_);
    if (scratch_.size() != round.ports_b.size()) {
      throw std::logic_error("drain replay out of sync with recorded round");
    }
    for (const auto& [q, head] : scratch_) {
      (void)q;
      const std::int64_t mate = mate_of_[static_cast<std::size_t>(head)];
      if (mate >= 0 && har_buffered_[static_cast<std::size_t>(mate)]) {
        // The matched C-packet left OPT while its mate is still buffered, so
        // the mate cannot have departed strictly earlier.
        ledger_.mate_violations.push_back({head, mate, event_index_});
      }
    }
    check_gu(ProofEventKind::Drain, round.boundary, -1);
  }

  std::int64_t surplus(int port) const {
    return std::max<std::int64_t>(har_.occupancy(port) - opt_.occupancy(port), 0);
  }

  void check_gu(ProofEventKind kind, std::int64_t slot, std::int64_t packet_id) {
    for (int q = 1; q <= trace_.config.ports; ++q) {
      const std::int64_t g = surplus(q);
      const std::int64_t u = unmapped_buffered_[static_cast<std::size_t>(q - 1)];
      if (g != u) {
        if (is_arrival_kind(kind)) {
          ++ledger_.arrival_gu_mismatches;
        } else {
          ++ledger_.drain_gu_mismatches;
        }
        if (ledger_.gu_samples.size() < options_.max_recorded_mismatches) {
          ledger_.gu_samples.push_back({event_index_, kind, packet_id, q, g, u});
        }
      }
      if (options_.record_events) {
        ledger_.event_rows.push_back({event_index_, slot, kind, packet_id, q, har_.occupancy(q),
                                      opt_.occupancy(q), g, u});
      }
    }
  }

  void finish() {
    ledger_.har_count = lockstep_.result_a.accepted;
    ledger_.opt_count = lockstep_.result_b.accepted;
    ledger_.guard_rejections = lockstep_.result_a.guard_rejections;

    std::int64_t a = 0, b = 0, c = 0, outside = 0;
    for (PartitionClass klass : ledger_.classes) {
      switch (klass) {
        case PartitionClass::A: ++a; break;
        case PartitionClass::B: ++b; break;
        case PartitionClass::C: ++c; break;
        case PartitionClass::NotInOpt: ++outside; break;
      }
    }
    ledger_.a_count = a;
    ledger_.b_count = b;
    ledger_.c_count = c;
    ledger_.partition_well_formed =
        (a + b + c == ledger_.opt_count) &&
        (outside == static_cast<std::int64_t>(ledger_.classes.size()) - ledger_.opt_count);

    const double ln_n = std::log(static_cast<double>(trace_.config.ports));
    const auto har = static_cast<double>(ledger_.har_count);
    ledger_.mapping_bound = {har, static_cast<double>(a + b), har >= static_cast<double>(a + b)};
    ledger_.matching_bound = {(1.0 + ln_n) * har, static_cast<double>(c),
                              (1.0 + ln_n) * har >= static_cast<double>(c)};
    ledger_.competitive_bound = {(2.0 + ln_n) * har, static_cast<double>(ledger_.opt_count),
                                 (2.0 + ln_n) * har >= static_cast<double>(ledger_.opt_count)};
  }

  const Trace& trace_;
  ProofCheckOptions options_;
  ModifiedHarmonicPolicy policy_;
  FifoBuffer har_;
  FifoBuffer opt_;
  LockstepResult lockstep_;
  ProofLedger ledger_;

  std::vector<std::uint8_t> mapped_;
  std::vector<std::uint8_t> har_buffered_;
  std::vector<std::int64_t> match_count_;
  std::vector<std::int64_t> mate_of_;
  std::vector<std::int64_t> unmapped_buffered_;
  std::vector<std::pair<int, std::int64_t>> scratch_;
  std::int64_t event_index_ = 0;
};

}  // namespace

ProofLedger check_proof(const Trace& trace, const std::vector<bool>& opt_vector,
                        const ProofCheckOptions& options) {
  const ReplayResult replay = replay_acceptance(trace, opt_vector);
  if (!replay.feasible) {
    throw std::invalid_argument("opt vector infeasible at packet " +
                                std::to_string(replay.first_violation_id));
  }
  Checker checker(trace, opt_vector, options);
  return checker.run();
}

std::vector<bool> choose_opt_vector(const Trace& trace, std::string& source) {
  const OracleLimits limits;
  if (static_cast<int>(trace.packets.size()) <= limits.max_packets) {
    OptResult opt = offline_opt(trace, limits);
    if (opt.exact) {
      source = "oracle";
      return std::move(opt.opt_vector);
    }
  }
  source = "greedy";
  return greedy_sharing_vector(trace);
}

}  // namespace bufsim
