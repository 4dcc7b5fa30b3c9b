#include "bufsim/policies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace bufsim {

std::string_view to_string(RejectCause cause) {
  switch (cause) {
    case RejectCause::None: return "none";
    case RejectCause::NoThreshold: return "no-threshold";
    case RejectCause::Threshold: return "threshold";
    case RejectCause::CapacityGuard: return "capacity-guard";
  }
  return "?";
}

Decision HarmonicPolicy::decide(const BufferState& state, const Packet& packet) {
  // Hypothetical occupancies with the packet included, largest first.
  scratch_.assign(state.occupancies().begin(), state.occupancies().end());
  ++scratch_[static_cast<std::size_t>(packet.port - 1)];
  std::sort(scratch_.begin(), scratch_.end(), std::greater<>());

  std::int64_t prefix = 0;
  for (std::size_t i = 0; i < scratch_.size(); ++i) {
    prefix += scratch_[i];
    if (static_cast<double>(prefix) > table_.prefix_budget(static_cast<int>(i + 1))) {
      return {false, RejectCause::Threshold, static_cast<int>(i + 1)};
    }
  }
  if (state.full()) {
    // Unreachable by the budget rule alone: the full prefix sum is bounded
    // by P_n <= B. Kept so the safety claim is measured, not trusted.
    return {false, RejectCause::CapacityGuard, 0};
  }
  return accept_decision();
}

Decision ModifiedHarmonicPolicy::decide(const BufferState& state, const Packet& packet) {
  arrival_ops_.reset();
  OpCounters& ops = arrival_ops_;

  const std::int64_t occ = state.occupancy(packet.port);
  ++ops.comparisons;  // eligibility: occ < T_1
  const int k = table_.index_for(occ);
  if (k == 0) {
    return {false, RejectCause::NoThreshold, 0};
  }
  // occ < T_k guarantees occ + 1 <= U_k, so the arriving queue reaches the
  // threshold exactly when it lands on U_k.
  ++ops.comparisons;
  const std::int64_t joins = (occ + 1 == table_.ceil_threshold(k)) ? 1 : 0;
  ++ops.comparisons;
  if (bookkeeping_.at_or_above(k) + joins > k) {
    return {false, RejectCause::Threshold, k};
  }
  ++ops.comparisons;
  if (state.full()) {
    return {false, RejectCause::CapacityGuard, 0};
  }
  return accept_decision();
}

void ModifiedHarmonicPolicy::on_admit(const BufferState& state, int port) {
  bookkeeping_.on_admit(state, port, &arrival_ops_);
}

void ModifiedHarmonicPolicy::on_drain(const BufferState& state, std::span<const int> ports) {
  drain_ops_.reset();
  bookkeeping_.on_drain(state, ports, &drain_ops_);
}

Decision DynamicThresholdPolicy::decide(const BufferState& state, const Packet& packet) {
  const std::int64_t occ = state.occupancy(packet.port);
  const double headroom = alpha_ * static_cast<double>(state.capacity() - state.total());
  if (!(static_cast<double>(occ) < headroom)) {
    return {false, RejectCause::Threshold, 0};
  }
  if (state.full()) {
    return {false, RejectCause::CapacityGuard, 0};
  }
  return accept_decision();
}

Decision CompleteSharingPolicy::decide(const BufferState& state, const Packet& packet) {
  (void)packet;
  if (state.full()) {
    return {false, RejectCause::CapacityGuard, 0};
  }
  return accept_decision();
}

Decision CompletePartitioningPolicy::decide(const BufferState& state, const Packet& packet) {
  if (state.occupancy(packet.port) >= quota_) {
    return {false, RejectCause::Threshold, 0};
  }
  if (state.full()) {
    return {false, RejectCause::CapacityGuard, 0};
  }
  return accept_decision();
}

SmxqPolicy::SmxqPolicy(const SwitchConfig& config, std::int64_t theta) : theta_(theta) {
  if (theta_ <= 0) {
    theta_ = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(config.capacity) / std::sqrt(static_cast<double>(config.ports))));
  }
}

Decision SmxqPolicy::decide(const BufferState& state, const Packet& packet) {
  if (state.occupancy(packet.port) >= theta_) {
    return {false, RejectCause::Threshold, 0};
  }
  if (state.full()) {
    return {false, RejectCause::CapacityGuard, 0};
  }
  return accept_decision();
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Harmonic: return "harmonic";
    case PolicyKind::ModifiedHarmonic: return "modified-harmonic";
    case PolicyKind::DynamicThreshold: return "dt";
    case PolicyKind::CompleteSharing: return "sharing";
    case PolicyKind::CompletePartitioning: return "partitioning";
    case PolicyKind::Smxq: return "smxq";
  }
  return "?";
}

bool parse_policy_kind(std::string_view text, PolicyKind& out) {
  for (PolicyKind kind :
       {PolicyKind::Harmonic, PolicyKind::ModifiedHarmonic, PolicyKind::DynamicThreshold,
        PolicyKind::CompleteSharing, PolicyKind::CompletePartitioning, PolicyKind::Smxq}) {
    if (text == to_string(kind)) {
      out = kind;
      return true;
    }
  }
  return false;
}

std::unique_ptr<AdmissionPolicy> make_policy(PolicyKind kind, const SwitchConfig& config,
                                             const PolicyParams& params) {
  switch (kind) {
    case PolicyKind::Harmonic:
      return std::make_unique<HarmonicPolicy>(config);
    case PolicyKind::ModifiedHarmonic:
      return std::make_unique<ModifiedHarmonicPolicy>(config);
    case PolicyKind::DynamicThreshold:
      return std::make_unique<DynamicThresholdPolicy>(config, params.alpha);
    case PolicyKind::CompleteSharing:
      return std::make_unique<CompleteSharingPolicy>(config);
    case PolicyKind::CompletePartitioning:
      return std::make_unique<CompletePartitioningPolicy>(config);
    case PolicyKind::Smxq:
      return std::make_unique<SmxqPolicy>(config, params.theta);
  }
  throw std::invalid_argument("unknown policy kind");
}

namespace reference {

Decision modified_harmonic_decide_real(const ThresholdTable& table, const BufferState& state,
                                       int port) {
  const auto occ = static_cast<double>(state.occupancy(port));
  // Smallest threshold value strictly above the queue = largest index k.
  int k = 0;
  for (int j = table.ports(); j >= 1; --j) {
    if (occ < table.threshold(j)) {
      k = j;
      break;
    }
  }
  if (k == 0) {
    return {false, RejectCause::NoThreshold, 0};
  }
  std::int64_t count = 0;
  for (int q = 1; q <= state.ports(); ++q) {
    const std::int64_t after = state.occupancy(q) + (q == port ? 1 : 0);
    if (static_cast<double>(after) >= table.threshold(k)) ++count;
  }
  if (count > k) {
    return {false, RejectCause::Threshold, k};
  }
  if (state.full()) {
    return {false, RejectCause::CapacityGuard, 0};
  }
  return accept_decision();
}

}  // namespace reference

}  // namespace bufsim
