#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bufsim/bookkeeping.hpp"
#include "bufsim/buffer.hpp"
#include "bufsim/thresholds.hpp"
#include "bufsim/types.hpp"

namespace bufsim {

// Rejection causes, first-match order: a queue at or above T_1 has no
// eligible threshold; otherwise the per-threshold count rule applies;
// a packet that clears both can still be stopped by the hard capacity
// guard (total == B). The guard is counted separately because the
// threshold rule alone does not imply the shared buffer stays within B.
enum class RejectCause : std::uint8_t {
  None,           // accepted
  NoThreshold,    // occupancy at or above T_1
  Threshold,      // per-threshold count (or prefix budget) exceeded
  CapacityGuard,  // shared buffer full
};

std::string_view to_string(RejectCause cause);

struct Decision {
  bool accept = false;
  RejectCause cause = RejectCause::None;
  int threshold_index = 0;  // k that rejected, when cause == Threshold

  bool operator==(const Decision& other) const = default;
};

inline Decision accept_decision() { return {true, RejectCause::None, 0}; }

class AdmissionPolicy {
 public:
  virtual ~AdmissionPolicy() = default;

  virtual Decision decide(const BufferState& state, const Packet& packet) = 0;

  // Called after the engine applied an accepted packet / a drain round;
  // `state` already reflects the change.
  virtual void on_admit(const BufferState& state, int port) { (void)state, (void)port; }
  virtual void on_drain(const BufferState& state, std::span<const int> ports) {
    (void)state, (void)ports;
  }

  virtual std::string_view name() const = 0;

  // Instrumented policies expose per-event work; others return nullptr.
  virtual const OpCounters* last_arrival_ops() const { return nullptr; }
  virtual const OpCounters* last_drain_ops() const { return nullptr; }
};

// Prefix-budget form: accept iff, with the packet included, the sum of the
// i largest queue occupancies stays within P_i for every i = 1..n.
// O(n log n) per decision; kept as the reference the threshold form is
// measured against.
class HarmonicPolicy : public AdmissionPolicy {
 public:
  explicit HarmonicPolicy(const SwitchConfig& config)
      : table_(config), scratch_(static_cast<std::size_t>(config.ports)) {}

  Decision decide(const BufferState& state, const Packet& packet) override;
  std::string_view name() const override { return "harmonic"; }

  const ThresholdTable& table() const { return table_; }

 private:
  ThresholdTable table_;
  std::vector<std::int64_t> scratch_;
};

// Threshold form: find the largest k with occ < T_k; accept iff, with the
// packet included, at most k queues sit at or above T_k. O(1) per arrival
// via HarmonicBookkeeping.
class ModifiedHarmonicPolicy : public AdmissionPolicy {
 public:
  explicit ModifiedHarmonicPolicy(const SwitchConfig& config)
      : table_(config), bookkeeping_(table_) {}

  Decision decide(const BufferState& state, const Packet& packet) override;
  void on_admit(const BufferState& state, int port) override;
  void on_drain(const BufferState& state, std::span<const int> ports) override;
  std::string_view name() const override { return "modified-harmonic"; }

  const OpCounters* last_arrival_ops() const override { return &arrival_ops_; }
  const OpCounters* last_drain_ops() const override { return &drain_ops_; }

  const ThresholdTable& table() const { return table_; }
  const HarmonicBookkeeping& bookkeeping() const { return bookkeeping_; }

 private:
  ThresholdTable table_;
  HarmonicBookkeeping bookkeeping_;
  OpCounters arrival_ops_;
  OpCounters drain_ops_;
};

// Accept iff occ[port] < alpha * (B - total). The classic dynamic-threshold
// baseline; alpha = 1 unless configured otherwise.
class DynamicThresholdPolicy : public AdmissionPolicy {
 public:
  DynamicThresholdPolicy(const SwitchConfig& config, double alpha)
      : alpha_(alpha) {
    (void)config;
  }

  Decision decide(const BufferState& state, const Packet& packet) override;
  std::string_view name() const override { return "dt"; }

  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

// Accept while the shared buffer has room.
class CompleteSharingPolicy : public AdmissionPolicy {
 public:
  explicit CompleteSharingPolicy(const SwitchConfig&) {}

  Decision decide(const BufferState& state, const Packet& packet) override;
  std::string_view name() const override { return "sharing"; }
};

// Static per-port quota of floor(B / n).
class CompletePartitioningPolicy : public AdmissionPolicy {
 public:
  explicit CompletePartitioningPolicy(const SwitchConfig& config)
      : quota_(config.capacity / config.ports) {}

  Decision decide(const BufferState& state, const Packet& packet) override;
  std::string_view name() const override { return "partitioning"; }

  std::int64_t quota() const { return quota_; }

 private:
  std::int64_t quota_;
};

// Static per-queue cap theta plus the shared-capacity check.
class SmxqPolicy : public AdmissionPolicy {
 public:
  // theta <= 0 selects the default ceil(B / sqrt(n)).
  SmxqPolicy(const SwitchConfig& config, std::int64_t theta);

  Decision decide(const BufferState& state, const Packet& packet) override;
  std::string_view name() const override { return "smxq"; }

  std::int64_t theta() const { return theta_; }

 private:
  std::int64_t theta_;
};

enum class PolicyKind : std::uint8_t {
  Harmonic,
  ModifiedHarmonic,
  DynamicThreshold,
  CompleteSharing,
  CompletePartitioning,
  Smxq,
};

struct PolicyParams {
  double alpha = 1.0;       // dynamic threshold
  std::int64_t theta = 0;   // smxq; <= 0 means default
};

std::string_view to_string(PolicyKind kind);
bool parse_policy_kind(std::string_view text, PolicyKind& out);

std::unique_ptr<AdmissionPolicy> make_policy(PolicyKind kind, const SwitchConfig& config,
                                             const PolicyParams& params = {});

namespace reference {

// Decision path that compares against the real-valued thresholds directly,
// scanning queues instead of using bookkeeping. Exists so tests can assert
// the integerized fast path never disagrees with the definition.
Decision modified_harmonic_decide_real(const ThresholdTable& table, const BufferState& state,
                                       int port);

}  // namespace reference

}  // namespace bufsim
