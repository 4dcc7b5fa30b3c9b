#include "bufsim/thresholds.hpp"

#include <cmath>
#include <stdexcept>

namespace bufsim {

ThresholdTable::ThresholdTable(const SwitchConfig& config)
    : ports_(config.ports), capacity_(config.capacity) {
  if (!config.valid()) {
    throw std::invalid_argument("threshold table needs ports >= 1 and capacity >= 1");
  }
  const auto n = static_cast<std::size_t>(ports_);
  scale_ = static_cast<double>(capacity_) / (1.0 + std::log(static_cast<double>(ports_)));

  t_.resize(n);
  u_.resize(n);
  p_.resize(n);
  const long double scale_ext =
      static_cast<long double>(capacity_) / (1.0L + std::log(static_cast<long double>(ports_)));
  double harmonic = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    t_[k] = scale_ / static_cast<double>(k + 1);
    u_[k] = static_cast<std::int64_t>(std::ceil(t_[k]));
    harmonic += 1.0 / static_cast<double>(k + 1);
    p_[k] = scale_ * harmonic;

    const auto u_ext = static_cast<std::int64_t>(
        std::ceil(scale_ext / static_cast<long double>(k + 1)));
    if (u_ext != u_[k]) {
      precision_warnings_.push_back(static_cast<int>(k + 1));
    }
  }

  // Inverse of U: for occ in [0, U_1), the largest k with U_k > occ.
  // U is nonincreasing, so a single backward sweep fills the table.
  index_by_occ_.resize(static_cast<std::size_t>(u_[0]));
  int k = ports_;
  for (std::int64_t occ = 0; occ < u_[0]; ++occ) {
    while (k > 1 && u_[static_cast<std::size_t>(k - 1)] <= occ) --k;
    index_by_occ_[static_cast<std::size_t>(occ)] = k;
  }
}

}  // namespace bufsim
