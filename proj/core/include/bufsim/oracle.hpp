#pragma once

#include <cstdint>
#include <vector>

#include "bufsim/policies.hpp"
#include "bufsim/types.hpp"

namespace bufsim {

struct OracleLimits {
  int max_packets = 24;                      // advisory cap for callers
  std::int64_t node_budget = 100'000'000;    // hard cap on explored branches
};

struct OptResult {
  std::int64_t opt_count = 0;
  std::vector<bool> opt_vector;       // lexicographically first optimum, accept < reject
  std::int64_t nodes_explored = 0;
  bool exact = true;                  // false when the node budget ran out
};

// Exhaustive accept/reject search in arrival order with branch-and-bound
// pruning (accepted + remaining <= incumbent). Accept branches first, so
// the returned vector is the lexicographically first optimum. When the
// node budget runs out, opt_count is a lower bound and exact is false.
OptResult offline_opt(const Trace& trace, const OracleLimits& limits = {});

struct RatioReport {
  std::int64_t opt_count = 0;
  std::int64_t alg_count = 0;
  double ratio = 1.0;  // 1 when both zero, +inf when alg = 0 < opt
  bool exact = true;
};

RatioReport competitive_ratio(const Trace& trace, AdmissionPolicy& policy,
                              const OracleLimits& limits = {});

// Feasible acceptance vector from greedy complete sharing; the stand-in
// adversary when the trace is too long for the exact search.
std::vector<bool> greedy_sharing_vector(const Trace& trace);

}  // namespace bufsim
