#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "bufsim/simulator.hpp"
#include "bufsim/types.hpp"

namespace bufsim::testing {

inline Trace make_trace(int ports, std::int64_t capacity,
                        std::initializer_list<std::pair<int, int>> slot_port) {
  Trace trace{{ports, capacity}, {}};
  std::int64_t id = 0;
  for (const auto& [slot, port] : slot_port) {
    trace.packets.push_back({id++, slot, port});
  }
  return trace;
}

// True when `a` precedes `b` with accept ordered before reject per position.
inline bool lex_less(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i];
  }
  return false;
}

struct BruteOpt {
  std::int64_t count = 0;
  std::vector<bool> vector;
};

// Reference optimum by trying all 2^m acceptance subsets; usable for m <= ~14.
inline BruteOpt brute_force_opt(const Trace& trace) {
  const std::size_t m = trace.packets.size();
  BruteOpt best{0, std::vector<bool>(m, false)};
  bool have = false;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<bool> vec(m);
    std::int64_t count = 0;
    for (std::size_t j = 0; j < m; ++j) {
      vec[j] = (mask >> j) & 1u;
      count += vec[j] ? 1 : 0;
    }
    if (!replay_acceptance(trace, vec).feasible) continue;
    if (!have || count > best.count || (count == best.count && lex_less(vec, best.vector))) {
      best = {count, vec};
      have = true;
    }
  }
  return best;
}

}  // namespace bufsim::testing
