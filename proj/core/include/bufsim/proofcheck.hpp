#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bufsim/policies.hpp"
#include "bufsim/types.hpp"

namespace bufsim {

// Empirical checker for the competitive argument behind the threshold
// policy. HAR is a live modified-harmonic run; OPT is any feasible
// acceptance vector. Every step of the argument is re-derived from the
// event stream and checked, never assumed:
//
//   * partition of OPT's packets into A = OPT intersect HAR, B = rejected
//     by HAR while HAR's queue for that port was strictly taller than
//     OPT's, and C = the rest;
//   * per-port injective sub-mappings: A-packets map to themselves,
//     B-packets to an unmapped HAR packet of the same port;
//   * the surplus invariant g(q) = max(occHAR(q) - occOPT(q), 0) against
//     u(q) = currently buffered HAR packets of port q without antecedent,
//     recomputed for every port after every event;
//   * a matching for C-packets onto HAR-buffered packets with bounded
//     multiplicity and strictly earlier drain time;
//   * the final counting bounds.
enum class PartitionClass : std::uint8_t { NotInOpt, A, B, C };

enum class AntecedentStrategy : std::uint8_t {
  MostRecentBuffered,  // newest unmapped buffered packet of the port
  EarliestBuffered,    // oldest
};

enum class ProofEventKind : std::uint8_t {
  ArrivalA,
  ArrivalB,
  ArrivalC,
  ArrivalHarOnly,   // accepted by HAR, rejected by OPT
  ArrivalNeither,   // rejected by both
  Drain,
};

std::string_view to_string(PartitionClass klass);
std::string_view to_string(ProofEventKind kind);
std::string_view to_string(AntecedentStrategy strategy);

struct GuMismatch {
  std::int64_t event_index = 0;
  ProofEventKind kind = ProofEventKind::Drain;
  std::int64_t packet_id = -1;  // -1 for drain events
  int port = 0;
  std::int64_t g = 0;
  std::int64_t u = 0;
};

struct SubmappingViolation {
  std::int64_t packet_id = 0;  // the B-packet with no candidate
  int port = 0;
  std::int64_t g = 0;  // surplus at the failed selection
  std::int64_t u = 0;  // unmapped buffered count (0 here by definition)
};

struct MatchingViolation {
  std::int64_t packet_id = 0;  // the C-packet with no candidate
  int port = 0;
  RejectCause har_cause = RejectCause::None;
  int threshold_index = 0;             // k that rejected it, when threshold-caused
  std::int64_t buffered_within_ceil = 0;  // HAR packets at positions <= ceil(T_k); -1 if k unset
  std::int64_t opt_position = 0;       // p's post-acceptance position in OPT's queue
};

// A matched C-packet left OPT's buffer while its mate was still buffered in
// HAR's; falsifies the "mates live in OPT's current buffer" step.
struct MateViolation {
  std::int64_t c_packet = 0;
  std::int64_t mate = 0;
  std::int64_t event_index = 0;
};

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;

  double slack() const { return lhs - rhs; }
};

// One row per (event, port) for the full dump; populated when
// ProofCheckOptions::record_events is set.
struct ProofEventRow {
  std::int64_t event_index = 0;
  std::int64_t slot = 0;
  ProofEventKind kind = ProofEventKind::Drain;
  std::int64_t packet_id = -1;
  int port = 0;
  std::int64_t occ_har = 0;
  std::int64_t occ_opt = 0;
  std::int64_t g = 0;
  std::int64_t u = 0;
};

struct ProofCheckOptions {
  AntecedentStrategy antecedent = AntecedentStrategy::MostRecentBuffered;
  bool record_events = false;
  std::size_t max_recorded_mismatches = 64;
  std::string opt_source = "custom";  // provenance label carried into the ledger
};

struct ProofLedger {
  SwitchConfig config;
  std::string opt_source;
  AntecedentStrategy antecedent = AntecedentStrategy::MostRecentBuffered;

  std::int64_t opt_count = 0;
  std::int64_t har_count = 0;
  std::int64_t a_count = 0;
  std::int64_t b_count = 0;
  std::int64_t c_count = 0;
  bool partition_well_formed = false;

  std::vector<PartitionClass> classes;   // by packet id
  std::vector<std::int64_t> antecedents;  // packet id -> HAR packet id, -1 none

  std::vector<SubmappingViolation> submapping_violations;

  std::int64_t arrival_gu_mismatches = 0;
  std::int64_t drain_gu_mismatches = 0;
  std::vector<GuMismatch> gu_samples;  // capped at max_recorded_mismatches

  int match_cap = 0;  // largest integer strictly below 1 + ln n
  std::int64_t matched_count = 0;
  std::int64_t max_match_count = 0;
  std::vector<MatchingViolation> matching_violations;
  std::vector<MateViolation> mate_violations;

  BoundCheck mapping_bound;      //            |HAR| >= |A| + |B|
  BoundCheck matching_bound;     // (1+ln n) * |HAR| >= |C|
  BoundCheck competitive_bound;  // (2+ln n) * |HAR| >= |OPT|

  std::int64_t guard_rejections = 0;  // from the HAR run

  std::vector<ProofEventRow> event_rows;

  bool mapping_ok() const { return submapping_violations.empty(); }
  bool matching_ok() const { return matching_violations.empty() && mate_violations.empty(); }
  bool bounds_ok() const {
    return mapping_bound.holds && matching_bound.holds && competitive_bound.holds;
  }
  bool clean() const {
    return partition_well_formed && mapping_ok() && matching_ok() && bounds_ok() &&
           arrival_gu_mismatches == 0;
  }
};

// Multiplicity cap for the matching: the largest integer strictly below
// 1 + ln n (match counts are integers, the argument needs strictly-below).
int matching_cap(int ports);

// Runs HAR and the vector in lockstep and checks the whole argument.
// The vector must be feasible (replay_acceptance validates).
ProofLedger check_proof(const Trace& trace, const std::vector<bool>& opt_vector,
                        const ProofCheckOptions& options = {});

// Picks an adversary vector: the exact oracle when the trace fits the
// limits, otherwise greedy sharing. Returns its provenance in `source`.
std::vector<bool> choose_opt_vector(const Trace& trace, std::string& source);

}  // namespace bufsim
