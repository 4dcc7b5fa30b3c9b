#include "bufsim/tracegen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bufsim {

namespace {

// Draws are built from raw engine output only; the distribution adapters in
// <random> are implementation-defined, and equal seeds must give equal
// trace bytes on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  int uniform_int(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

  int binomial(int trials, double p) {
    int count = 0;
    for (int i = 0; i < trials; ++i) {
      if (unit() < p) ++count;
    }
    return count;
  }

 private:
  std::mt19937_64 engine_;
};

void emit(Trace& trace, std::int64_t slot, int port, int copies = 1) {
  for (int i = 0; i < copies; ++i) {
    trace.packets.push_back({static_cast<std::int64_t>(trace.packets.size()), slot, port});
  }
}

Trace gen_uniform(const GenSpec& spec) {
  Trace trace{spec.config, {}};
  Rng rng(spec.seed);
  const int n = spec.config.ports;
  // Four-trial binomial batches per (slot, port); mean arrivals per slot
  // across the switch equals load (clamped once load exceeds 4n).
  const double p = std::min(1.0, spec.load / (4.0 * static_cast<double>(n)));
  for (std::int64_t slot = 0; slot < spec.length; ++slot) {
    for (int port = 1; port <= n; ++port) {
      emit(trace, slot, port, rng.binomial(4, p));
    }
  }
  return trace;
}

Trace gen_flood(const GenSpec& spec) {
  Trace trace{spec.config, {}};
  const std::int64_t phase = spec.burst_len > 0 ? spec.burst_len : spec.length;
  const int n = spec.config.ports;
  const auto per_port =
      static_cast<int>((spec.config.capacity + n - 1) / n);  // ceil(B / n)
  // Three arrivals against one departure per slot ramps the victim queue
  // to whatever the policy tolerates, then every port bursts at once.
  for (std::int64_t slot = 0; slot < phase; ++slot) {
    emit(trace, slot, spec.target_port, 3);
  }
  for (int port = 1; port <= n; ++port) {
    emit(trace, phase, port, per_port);
  }
  return trace;
}

Trace gen_onoff(const GenSpec& spec) {
  Trace trace{spec.config, {}};
  Rng rng(spec.seed);
  const std::int64_t phase = spec.burst_len > 0 ? spec.burst_len : std::max<std::int64_t>(1, spec.length / 8);
  const auto batch = static_cast<int>(std::max(1.0, std::ceil(spec.load)));
  for (std::int64_t slot = 0; slot < spec.length; ++slot) {
    const bool on = (slot / phase) % 2 == 0;
    if (on) {
      emit(trace, slot, 1 + rng.uniform_int(spec.config.ports), batch);
    }
  }
  return trace;
}

Trace gen_adversarial_shift(const GenSpec& spec) {
  Trace trace{spec.config, {}};
  const std::int64_t phase = spec.burst_len > 0 ? spec.burst_len : spec.length;
  // Overload each port in turn; static per-port splits keep paying for the
  // ports that are no longer loaded.
  std::int64_t slot = 0;
  for (int port = 1; port <= spec.config.ports; ++port) {
    for (std::int64_t k = 0; k < phase; ++k, ++slot) {
      emit(trace, slot, port, 3);
    }
  }
  return trace;
}

}  // namespace

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::Uniform: return "uniform";
    case GenKind::Flood: return "flood";
    case GenKind::OnOff: return "onoff";
    case GenKind::AdversarialShift: return "adversarial-shift";
    case GenKind::Enumerate: return "enumerate";
  }
  return "?";
}

bool parse_gen_kind(std::string_view text, GenKind& out) {
  for (GenKind kind : {GenKind::Uniform, GenKind::Flood, GenKind::OnOff,
                       GenKind::AdversarialShift, GenKind::Enumerate}) {
    if (text == to_string(kind)) {
      out = kind;
      return true;
    }
  }
  return false;
}

Trace generate(const GenSpec& spec) {
  if (!spec.config.valid()) {
    throw std::invalid_argument("generator needs ports >= 1 and capacity >= 1");
  }
  if (spec.length < 0) {
    throw std::invalid_argument("generator length must be >= 0");
  }
  switch (spec.kind) {
    case GenKind::Uniform: return gen_uniform(spec);
    case GenKind::Flood: return gen_flood(spec);
    case GenKind::OnOff: return gen_onoff(spec);
    case GenKind::AdversarialShift: return gen_adversarial_shift(spec);
    case GenKind::Enumerate:
      throw std::invalid_argument("enumerate is a trace family; use TraceEnumerator");
  }
  throw std::invalid_argument("unknown generator kind");
}

TraceEnumerator::TraceEnumerator(const SwitchConfig& config, int max_slots, int max_packets,
                                 bool exact_length)
    : config_(config), max_slots_(max_slots), max_packets_(max_packets), exact_(exact_length) {
  if (!config.valid() || max_slots < 1 || max_packets < 0) {
    throw std::invalid_argument("enumerator needs valid config, max_slots >= 1, max_packets >= 0");
  }
  length_ = exact_ ? max_packets_ : 0;
  slots_.assign(static_cast<std::size_t>(length_), 0);
  ports_.assign(static_cast<std::size_t>(length_), 1);
}

bool TraceEnumerator::next(Trace& out) {
  if (done_) return false;
  out.config = config_;
  out.packets.clear();
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    out.packets.push_back({static_cast<std::int64_t>(i), slots_[i], ports_[i]});
  }
  done_ = !advance();
  return true;
}

bool TraceEnumerator::advance() {
  // Rightmost port that can still grow.
  for (std::size_t i = ports_.size(); i > 0; --i) {
    if (ports_[i - 1] < config_.ports) {
      ++ports_[i - 1];
      std::fill(ports_.begin() + static_cast<std::ptrdiff_t>(i), ports_.end(), 1);
      return true;
    }
  }
  std::fill(ports_.begin(), ports_.end(), 1);
  // Next nondecreasing slot pattern.
  for (std::size_t i = slots_.size(); i > 0; --i) {
    if (slots_[i - 1] < max_slots_ - 1) {
      const int v = slots_[i - 1] + 1;
      std::fill(slots_.begin() + static_cast<std::ptrdiff_t>(i - 1), slots_.end(), v);
      return true;
    }
  }
  // Next length.
  if (exact_ || length_ >= max_packets_) return false;
  ++length_;
  slots_.assign(static_cast<std::size_t>(length_), 0);
  ports_.assign(static_cast<std::size_t>(length_), 1);
  return true;
}

std::uint64_t enumeration_count(int ports, int max_slots, int max_packets) {
  std::uint64_t total = 0;
  for (int m = 0; m <= max_packets; ++m) {
    // C(m + max_slots - 1, max_slots - 1) slot patterns.
    std::uint64_t patterns = 1;
    for (int j = 1; j <= max_slots - 1; ++j) {
      patterns = patterns * static_cast<std::uint64_t>(m + j) / static_cast<std::uint64_t>(j);
    }
    std::uint64_t port_choices = 1;
    for (int j = 0; j < m; ++j) port_choices *= static_cast<std::uint64_t>(ports);
    total += patterns * port_choices;
  }
  return total;
}

}  // namespace bufsim
