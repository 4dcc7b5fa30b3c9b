#include "bufsim/types.hpp"

#include <string>

namespace bufsim {

ValidationReport validate_trace(const Trace& trace) {
  ValidationReport report;
  const auto& cfg = trace.config;
  if (cfg.ports < 1) {
    report.violations.push_back("config: ports must be >= 1, got " + std::to_string(cfg.ports));
  }
  if (cfg.capacity < 1) {
    report.violations.push_back("config: capacity must be >= 1, got " +
                                std::to_string(cfg.capacity));
  }

  std::int64_t prev_slot = 0;
  for (std::size_t i = 0; i < trace.packets.size(); ++i) {
    const Packet& p = trace.packets[i];
    const std::string at = "packet " + std::to_string(i) + ": ";
    if (p.id != static_cast<std::int64_t>(i)) {
      report.violations.push_back(at + "id " + std::to_string(p.id) + " not dense (expected " +
                                  std::to_string(i) + ")");
    }
    if (p.slot < 0) {
      report.violations.push_back(at + "negative slot " + std::to_string(p.slot));
    }
    if (i > 0 && p.slot < prev_slot) {
      report.violations.push_back(at + "slot " + std::to_string(p.slot) +
                                  " decreases from previous " + std::to_string(prev_slot));
    }
    if (p.port < 1 || p.port > cfg.ports) {
      report.violations.push_back(at + "port " + std::to_string(p.port) + " outside 1.." +
                                  std::to_string(cfg.ports));
    }
    prev_slot = p.slot;
  }
  return report;
}

}  // namespace bufsim
