#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

namespace bufsim {

// Within a slot, transmissions happen at the integer boundary before that
// slot's arrivals are offered to the policy.
enum class Phase : std::uint8_t { Transmit, Arrivals };

// Raised when an admission would overflow the shared buffer. Policies are
// required to reject first, so hitting this is a policy bug, not input error.
class CapacityExceeded : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Occupancy-counter view of the shared buffer: one FIFO length per output
// port plus the shared total. This is the fast path used by policies.
class BufferState {
 public:
  BufferState(int ports, std::int64_t capacity)
      : occ_(static_cast<std::size_t>(ports), 0), capacity_(capacity) {}

  int ports() const { return static_cast<int>(occ_.size()); }
  std::int64_t capacity() const { return capacity_; }
  std::int64_t total() const { return total_; }
  bool full() const { return total_ >= capacity_; }

  std::int64_t occupancy(int port) const {
    return occ_[static_cast<std::size_t>(port - 1)];
  }

  void admit(int port) {
    if (total_ >= capacity_) {
      throw CapacityExceeded("admit on full shared buffer");
    }
    ++occ_[static_cast<std::size_t>(port - 1)];
    ++total_;
  }

  // One departure per nonempty port; appends the transmitting ports to `out`.
  void drain_into(std::vector<int>& out) {
    for (std::size_t i = 0; i < occ_.size(); ++i) {
      if (occ_[i] > 0) {
        --occ_[i];
        --total_;
        out.push_back(static_cast<int>(i + 1));
      }
    }
  }

  std::vector<int> drain() {
    std::vector<int> out;
    drain_into(out);
    return out;
  }

  const std::vector<std::int64_t>& occupancies() const { return occ_; }

 private:
  std::vector<std::int64_t> occ_;
  std::int64_t total_ = 0;
  std::int64_t capacity_;
};

// Identity-tracking view of the same process: per-port FIFO of packet ids.
// Used where packet identities matter (lockstep runs, proof checking).
class FifoBuffer {
 public:
  FifoBuffer(int ports, std::int64_t capacity)
      : queues_(static_cast<std::size_t>(ports)), capacity_(capacity) {}

  int ports() const { return static_cast<int>(queues_.size()); }
  std::int64_t capacity() const { return capacity_; }
  std::int64_t total() const { return total_; }

  std::int64_t occupancy(int port) const {
    return static_cast<std::int64_t>(queues_[static_cast<std::size_t>(port - 1)].size());
  }

  const std::deque<std::int64_t>& queue(int port) const {
    return queues_[static_cast<std::size_t>(port - 1)];
  }

  void admit(int port, std::int64_t id) {
    if (total_ >= capacity_) {
      throw CapacityExceeded("admit on full shared buffer");
    }
    queues_[static_cast<std::size_t>(port - 1)].push_back(id);
    ++total_;
  }

  // One departure per nonempty port; appends (port, id) pairs to `out`.
  void drain_into(std::vector<std::pair<int, std::int64_t>>& out) {
    for (std::size_t i = 0; i < queues_.size(); ++i) {
      auto& q = queues_[i];
      if (!q.empty()) {
        out.emplace_back(static_cast<int>(i + 1), q.front());
        q.pop_front();
        --total_;
      }
    }
  }

 private:
  std::vector<std::deque<std::int64_t>> queues_;
  std::int64_t total_ = 0;
  std::int64_t capacity_;
};

}  // namespace bufsim
