#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavplan {

// On-board preprocessing. Redundancy elimination trades CPU cycles for a
// smaller payload, capped at a fraction of the packet; a second budget of
// cycles tightens the SNR-gap coefficient toward capacity.
struct ComputeParams {
  double cpu_frequency_hz = 1e9;
  double effective_capacitance = 1e-28;     // kappa in the kf^3 chip model
  double cycles_per_redundant_bit = 30.0;
  double max_elimination_fraction = 0.5;    // rho_max
  double initial_gap = 3.0;                 // Gamma_0, linear (not dB)
  double waterfilling_cycle_scale = 5e8;    // c0, cycles to shrink the gap by e

  void validate() const {
    if (cpu_frequency_hz <= 0 || effective_capacitance <= 0 || cycles_per_redundant_bit <= 0 ||
        waterfilling_cycle_scale <= 0)
      throw std::invalid_argument("compute parameters must be positive");
    if (max_elimination_fraction < 0 || max_elimination_fraction > 1)
      throw std::invalid_argument("max_elimination_fraction must lie in [0, 1]");
    if (initial_gap < 1) throw std::invalid_argument("initial_gap must be >= 1");
  }
};

inline double eliminated_bits(const ComputeParams& cp, double packet_bits, double t_pre_s) {
  if (packet_bits < 0 || t_pre_s < 0) throw std::invalid_argument("eliminated_bits: negative input");
  return std::min(cp.cpu_frequency_hz * t_pre_s / cp.cycles_per_redundant_bit,
                  cp.max_elimination_fraction * packet_bits);
}

inline double residual_bits(const ComputeParams& cp, double packet_bits, double t_pre_s) {
  return packet_bits - eliminated_bits(cp, packet_bits, t_pre_s);
}

// Gap decays from Gamma_0 toward 1 as waterfilling cycles accumulate.
inline double gap_coefficient(const ComputeParams& cp, double t_wf_s) {
  if (t_wf_s < 0) throw std::invalid_argument("gap_coefficient: negative time");
  return 1.0 + (cp.initial_gap - 1.0) * std::exp(-cp.cpu_frequency_hz * t_wf_s / cp.waterfilling_cycle_scale);
}

inline double compute_power_w(const ComputeParams& cp) {
  return cp.effective_capacitance * cp.cpu_frequency_hz * cp.cpu_frequency_hz * cp.cpu_frequency_hz;
}

inline double computation_energy_j(const ComputeParams& cp, double seconds) {
  if (seconds < 0) throw std::invalid_argument("computation_energy_j: negative time");
  return compute_power_w(cp) * seconds;
}

}  // namespace uavplan
