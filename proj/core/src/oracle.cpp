#include "bufsim/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "bufsim/simulator.hpp"

namespace bufsim {

namespace {

// Depth-first accept/reject search with explicit undo. The buffer process
// between consecutive packets is deterministic (one departure per nonempty
// port per boundary), so only the decisions branch.
class Search {
 public:
  Search(const Trace& trace, const OracleLimits& limits)
      : trace_(trace),
        limits_(limits),
        occ_(static_cast<std::size_t>(trace.config.ports), 0),
        decisions_(trace.packets.size(), 0) {
    const auto m = trace.packets.size();
    rounds_before_.resize(m, 0);
    for (std::size_t i = 1; i < m; ++i) {
      rounds_before_[i] = trace.packets[i].slot - trace.packets[i - 1].slot;
    }
    // Boundaries before the first packet only drain an empty buffer.
  }

  OptResult run() {
    best_ = -1;
    step(0);
    if (best_ < 0) {
      // Budget died before any leaf; all-reject matches the count-0 bound.
      best_vector_.assign(trace_.packets.size(), 0);
    }
    OptResult out;
    out.opt_count = std::max<std::int64_t>(best_, 0);
    out.opt_vector.assign(best_vector_.begin(), best_vector_.end());
    out.nodes_explored = nodes_;
    out.exact = !exhausted_;
    return out;
  }

 private:
  void step(std::size_t i) {
    if (exhausted_) return;
    const auto m = trace_.packets.size();
    if (i == m) {
      if (accepted_ > best_) {
        best_ = accepted_;
        best_vector_.assign(decisions_.begin(), decisions_.end());
      }
      return;
    }
    if (accepted_ + static_cast<std::int64_t>(m - i) <= best_) {
      return;  // cannot beat the incumbent
    }

    // Advance the clock to this packet's slot. A round removes at least one
    // packet from a nonempty buffer, so at most `total` rounds matter.
    std::int64_t rounds = rounds_before_[i];
    const std::size_t undo_mark = popped_.size();
    while (rounds-- > 0 && total_ > 0) {
      for (std::size_t q = 0; q < occ_.size(); ++q) {
        if (occ_[q] > 0) {
          --occ_[q];
          --total_;
          popped_.push_back(static_cast<int>(q));
        }
      }
    }

    const auto port = static_cast<std::size_t>(trace_.packets[i].port - 1);
    if (total_ < trace_.config.capacity) {
      if (++nodes_ > limits_.node_budget) {
        exhausted_ = true;
      } else {
        decisions_[i] = 1;
        ++occ_[port];
        ++total_;
        ++accepted_;
        step(i + 1);
        --accepted_;
        --total_;
        --occ_[port];
      }
    }
    if (!exhausted_) {
      if (++nodes_ > limits_.node_budget) {
        exhausted_ = true;
      } else {
        decisions_[i] = 0;
        step(i + 1);
      }
    }

    // Undo the drain rounds applied above.
    for (std::size_t j = popped_.size(); j > undo_mark; --j) {
      ++occ_[static_cast<std::size_t>(popped_[j - 1])];
      ++total_;
    }
    popped_.resize(undo_mark);
  }

  const Trace& trace_;
  OracleLimits limits_;
  std::vector<std::int64_t> occ_;
  std::int64_t total_ = 0;
  std::int64_t accepted_ = 0;
  std::vector<std::uint8_t> decisions_;
  std::vector<std::uint8_t> best_vector_;
  std::vector<std::int64_t> rounds_before_;
  std::vector<int> popped_;
  std::int64_t best_ = -1;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

OptResult offline_opt(const Trace& trace, const OracleLimits& limits) {
  const ValidationReport report = validate_trace(trace);
  if (!report.ok()) {
    throw std::invalid_argument("invalid trace: " + report.violations.front());
  }
  Search search(trace, limits);
  return search.run();
}

RatioReport competitive_ratio(const Trace& trace, AdmissionPolicy& policy,
                              const OracleLimits& limits) {
  const OptResult opt = offline_opt(trace, limits);
  const SimResult sim = simulate(trace, policy);
  RatioReport out;
  out.opt_count = opt.opt_count;
  out.alg_count = sim.accepted;
  out.exact = opt.exact;
  if (opt.opt_count == 0 && sim.accepted == 0) {
    out.ratio = 1.0;
  } else if (sim.accepted == 0) {
    out.ratio = std::numeric_limits<double>::infinity();
  } else {
    out.ratio = static_cast<double>(opt.opt_count) / static_cast<double>(sim.accepted);
  }
  return out;
}

std::vector<bool> greedy_sharing_vector(const Trace& trace) {
  CompleteSharingPolicy greedy(trace.config);
  const SimResult sim = simulate(trace, greedy);
  std::vector<bool> accept(sim.decisions.size());
  for (std::size_t i = 0; i < sim.decisions.size(); ++i) {
    accept[i] = sim.decisions[i].accept;
  }
  return accept;
}

}  // namespace bufsim
