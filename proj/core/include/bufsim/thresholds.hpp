#pragma once

#include <cstdint>
#include <vector>

#include "bufsim/types.hpp"

namespace bufsim {

// Precomputed threshold family for the harmonic policies.
//
//   scale  D   = B / (1 + ln n)
//   threshold  T_k = D / k                 (k = 1..n, strictly decreasing)
//   ceil_threshold U_k = ceil(T_k)         (integer comparisons at runtime)
//   prefix_budget  P_i = D * (1 + 1/2 + ... + 1/i)
//
// For integer occupancies, occ >= T_k iff occ >= U_k, so all runtime
// comparisons are integer-exact. index_for(occ) inverts U via a lookup
// table so a decision costs O(1) regardless of n.
class ThresholdTable {
 public:
  explicit ThresholdTable(const SwitchConfig& config);

  int ports() const { return ports_; }
  std::int64_t capacity() const { return capacity_; }
  double scale() const { return scale_; }

  double threshold(int k) const { return t_[static_cast<std::size_t>(k - 1)]; }
  std::int64_t ceil_threshold(int k) const { return u_[static_cast<std::size_t>(k - 1)]; }
  double prefix_budget(int i) const { return p_[static_cast<std::size_t>(i - 1)]; }

  // Largest k with occ < T_k; 0 when occ >= T_1 (no eligible threshold).
  int index_for(std::int64_t occ) const {
    if (occ >= u_[0]) return 0;
    return index_by_occ_[static_cast<std::size_t>(occ)];
  }

  // U_1: the hard per-queue cap, and the largest occupancy index_for accepts.
  std::int64_t max_queue() const { return u_[0]; }

  // Indices k where ceil(T_k) computed in binary64 and extended precision
  // disagree. Empty in practice; surfaced so a sweep over unusual B/n pairs
  // can flag boundary trouble instead of silently diverging.
  const std::vector<int>& precision_warnings() const { return precision_warnings_; }

 private:
  int ports_;
  std::int64_t capacity_;
  double scale_;
  std::vector<double> t_;
  std::vector<std::int64_t> u_;
  std::vector<double> p_;
  std::vector<int> index_by_occ_;  // occ in [0, U_1) -> largest k with U_k > occ
  std::vector<int> precision_warnings_;
};

}  // namespace bufsim
