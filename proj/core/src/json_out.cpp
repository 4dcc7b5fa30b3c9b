#include "bufsim/json_out.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "bufsim/version.hpp"

namespace bufsim {

namespace {

using json = nlohmann::ordered_json;

json header(std::string_view kind, const SwitchConfig& config) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["kind"] = kind;
  doc["config"] = {{"n", config.ports}, {"B", config.capacity}};
  return doc;
}

// JSON has no infinity; an unbounded ratio is emitted as the string "inf".
json finite_or_label(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  return value;
}

json bound_check(const BoundCheck& check) {
  return {{"lhs", check.lhs}, {"rhs", check.rhs}, {"holds", check.holds},
          {"slack", check.slack()}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string to_json(const SimResult& result, const SwitchConfig& config,
                    const std::string& policy_label) {
  json doc = header("simulate", config);
  doc["policy"] = policy_label;
  doc["packets"] = result.decisions.size();
  doc["accepted"] = result.accepted;
  doc["rejected"] = result.rejected;
  doc["transmitted"] = result.transmitted;
  doc["throughput"] = result.throughput();
  doc["guardTriggers"] = result.guard_rejections;
  doc["counters"] = {{"noThreshold", result.no_threshold_rejections},
                     {"threshold", result.threshold_rejections},
                     {"capacityGuard", result.guard_rejections}};
  doc["ops"] = {{"maxArrival", result.max_arrival_ops},
                {"maxDrainRound", result.max_drain_round_ops},
                {"comparisons", result.total_comparisons},
                {"increments", result.total_increments}};
  json decisions = json::array();
  for (std::size_t id = 0; id < result.decisions.size(); ++id) {
    const Decision& d = result.decisions[id];
    json row = {{"id", id}, {"accept", d.accept}, {"cause", to_string(d.cause)}};
    if (d.cause == RejectCause::Threshold) row["k"] = d.threshold_index;
    decisions.push_back(std::move(row));
  }
  doc["decisions"] = std::move(decisions);
  return dump(doc);
}

std::string to_json(const OptResult& result, const SwitchConfig& config) {
  json doc = header("opt", config);
  doc["packets"] = result.opt_vector.size();
  doc["optCount"] = result.opt_count;
  json vector = json::array();
  for (bool accept : result.opt_vector) vector.push_back(accept ? 1 : 0);
  doc["optVector"] = std::move(vector);
  doc["nodesExplored"] = result.nodes_explored;
  doc["exact"] = result.exact;
  return dump(doc);
}

std::string to_json(const RatioReport& report, const SwitchConfig& config,
                    const std::string& policy_label, const std::string& opt_label) {
  json doc = header("ratio", config);
  doc["policy"] = policy_label;
  doc["optSource"] = opt_label;
  doc["optCount"] = report.opt_count;
  doc["algCount"] = report.alg_count;
  doc["ratio"] = finite_or_label(report.ratio);
  const double bound = 2.0 + std::log(static_cast<double>(config.ports));
  doc["bound"] = bound;
  doc["withinBound"] = report.ratio <= bound;
  doc["exact"] = report.exact;
  return dump(doc);
}

std::string to_json(const ProofLedger& ledger) {
  json doc = header("check-proof", ledger.config);
  doc["optSource"] = ledger.opt_source;
  doc["antecedentStrategy"] = to_string(ledger.antecedent);
  doc["counts"] = {{"opt", ledger.opt_count},
                   {"har", ledger.har_count},
                   {"a", ledger.a_count},
                   {"b", ledger.b_count},
                   {"c", ledger.c_count}};
  doc["partitionWellFormed"] = ledger.partition_well_formed;
  doc["verdicts"] = {{"mapping", ledger.mapping_ok()},
                     {"matching", ledger.matching_ok()},
                     {"bounds", ledger.bounds_ok()}};
  doc["guMismatches"] = {{"arrival", ledger.arrival_gu_mismatches},
                         {"drain", ledger.drain_gu_mismatches}};
  doc["matchCap"] = ledger.match_cap;
  doc["matchedCount"] = ledger.matched_count;
  doc["maxMatchCount"] = ledger.max_match_count;

  json submapping = json::array();
  for (const auto& v : ledger.submapping_violations) {
    submapping.push_back({{"packetId", v.packet_id}, {"port", v.port}, {"g", v.g}, {"u", v.u}});
  }
  json matching = json::array();
  for (const auto& v : ledger.matching_violations) {
    json row = {{"packetId", v.packet_id},
                {"port", v.port},
                {"harCause", to_string(v.har_cause)},
                {"optPosition", v.opt_position}};
    if (v.har_cause == RejectCause::Threshold) {
      row["k"] = v.threshold_index;
      row["bufferedWithinCeil"] = v.buffered_within_ceil;
    }
    matching.push_back(std::move(row));
  }
  json mates = json::array();
  for (const auto& v : ledger.mate_violations) {
    mates.push_back({{"cPacket", v.c_packet}, {"mate", v.mate}, {"event", v.event_index}});
  }
  doc["violations"] = {{"submapping", std::move(submapping)},
                       {"matching", std::move(matching)},
                       {"mate", std::move(mates)}};

  json samples = json::array();
  for (const auto& s : ledger.gu_samples) {
    samples.push_back({{"event", s.event_index},
                       {"kind", to_string(s.kind)},
                       {"packetId", s.packet_id},
                       {"port", s.port},
                       {"g", s.g},
                       {"u", s.u}});
  }
  doc["guSamples"] = std::move(samples);

  doc["bounds"] = {{"mapping", bound_check(ledger.mapping_bound)},
                   {"matching", bound_check(ledger.matching_bound)},
                   {"competitive", bound_check(ledger.competitive_bound)}};
  doc["guardTriggers"] = ledger.guard_rejections;
  doc["clean"] = ledger.clean();
  return dump(doc);
}

std::string to_json(const DifferentialReport& report, const SwitchConfig& config) {
  json doc = header("differential", config);
  doc["agree"] = report.agree;
  doc["firstDivergenceId"] = report.first_divergence_id;
  if (!report.agree) {
    doc["harmonicDecision"] = {{"accept", report.harmonic_decision.accept},
                               {"cause", to_string(report.harmonic_decision.cause)}};
    doc["modifiedDecision"] = {{"accept", report.modified_decision.accept},
                               {"cause", to_string(report.modified_decision.cause)}};
    doc["occHarmonic"] = report.occ_harmonic;
    doc["occModified"] = report.occ_modified;
  }
  doc["harmonic"] = {{"accepted", report.harmonic_result.accepted},
                     {"guardTriggers", report.harmonic_result.guard_rejections}};
  doc["modified"] = {{"accepted", report.modified_result.accepted},
                     {"guardTriggers", report.modified_result.guard_rejections}};
  return dump(doc);
}

std::string timeline_csv(const SimResult& result) {
  std::ostringstream out;
  out << "event,slot,phase,port,occ_before,decision,cause\n";
  for (const TimelineRow& row : result.timeline) {
    out << row.event << ',' << row.slot << ','
        << (row.phase == Phase::Transmit ? "transmit" : "arrival") << ',' << row.port << ','
        << row.occ_before << ',' << row.decision << ',' << to_string(row.cause) << '\n';
  }
  return out.str();
}

std::string proof_events_csv(const ProofLedger& ledger) {
  std::ostringstream out;
  out << "event,slot,kind,packet_id,port,occ_har,occ_opt,g,u\n";
  for (const ProofEventRow& row : ledger.event_rows) {
    out << row.event_index << ',' << row.slot << ',' << to_string(row.kind) << ','
        << row.packet_id << ',' << row.port << ',' << row.occ_har << ',' << row.occ_opt << ','
        << row.g << ',' << row.u << '\n';
  }
  return out.str();
}

}  // namespace bufsim
