#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavplan {

struct RadioParams {
  double bandwidth_hz = 2e6;
  double noise_psd_dbm_hz = -169.0;
  double max_tx_power_w = 5.0;

  void validate() const {
    if (bandwidth_hz <= 0) throw std::invalid_argument("radio: bandwidth must be positive");
    if (max_tx_power_w <= 0) throw std::invalid_argument("radio: max_tx_power_w must be positive");
  }
};

inline double noise_power_w(const RadioParams& r) {
  return std::pow(10.0, (r.noise_psd_dbm_hz + 10.0 * std::log10(r.bandwidth_hz)) / 10.0) / 1000.0;
}

// Shannon rate with an SNR-gap coefficient; gap 1 is ideal coding.
inline double achievable_rate_bps(const RadioParams& r, double tx_power_w, double gain_db, double gap) {
  if (tx_power_w < 0) throw std::invalid_argument("achievable_rate_bps: negative power");
  if (gap < 1) throw std::invalid_argument("achievable_rate_bps: gap below 1");
  const double g_lin = std::pow(10.0, gain_db / 10.0);
  return r.bandwidth_hz * std::log2(1.0 + tx_power_w * g_lin / (gap * noise_power_w(r)));
}

struct TransmissionPhase {
  double rate_bps = 0.0;
  double duration_s = 0.0;
  double energy_j = 0.0;
};

// Time and radiated energy to push residual_bits through the link. A dead
// link (rate 0 with bits pending) comes back with infinite duration so the
// caller can treat the plan as infeasible instead of dividing by zero.
inline TransmissionPhase transmission_phase(const RadioParams& r, double residual_bits,
                                            double tx_power_w, double gain_db, double gap) {
  const double rate = achievable_rate_bps(r, tx_power_w, gain_db, gap);
  if (residual_bits < 0) throw std::invalid_argument("transmission_phase: negative residual");
  if (residual_bits == 0.0) return {rate, 0.0, 0.0};
  if (rate <= 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return {0.0, inf, inf};
  }
  const double t = residual_bits / rate;
  return {rate, t, tx_power_w * t};
}

}  // namespace uavplan
