#pragma once

#include <string>

#include "bufsim/oracle.hpp"
#include "bufsim/proofcheck.hpp"
#include "bufsim/simulator.hpp"
#include "bufsim/types.hpp"

namespace bufsim {

// JSON serialization for result types. Every document carries the tool
// name/version and the originating config, so outputs are self-describing.
// Key order is fixed and numbers are integers where the value is integral,
// so reruns produce byte-identical files.

std::string to_json(const SimResult& result, const SwitchConfig& config,
                    const std::string& policy_label);
std::string to_json(const OptResult& result, const SwitchConfig& config);
std::string to_json(const RatioReport& report, const SwitchConfig& config,
                    const std::string& policy_label, const std::string& opt_label);
std::string to_json(const ProofLedger& ledger);
std::string to_json(const DifferentialReport& report, const SwitchConfig& config);

// Timeline CSV: event,slot,phase,port,occ_before,decision,cause
std::string timeline_csv(const SimResult& result);

// Proof event dump CSV: one row per (event, port) snapshot.
std::string proof_events_csv(const ProofLedger& ledger);

}  // namespace bufsim
