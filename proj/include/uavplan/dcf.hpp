#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "uavplan/numeric.hpp"

namespace uavplan {

// Saturation throughput of n contending stations under basic-access CSMA/CA,
// parameterized by the per-slot transmit probability tau. Times are in
// microseconds, frame fields in bits at the channel bit rate.
struct DcfParams {
  double slot_us = 50.0;
  double sifs_us = 28.0;
  double difs_us = 128.0;
  double prop_delay_us = 1.0;
  double phy_header_bits = 128.0;
  double mac_header_bits = 272.0;
  double ack_bits = 112.0;
  double payload_bits = 8184.0;
  double bit_rate_mbps = 1.0;

  void validate() const {
    if (slot_us <= 0 || sifs_us < 0 || difs_us < 0 || prop_delay_us < 0)
      throw std::invalid_argument("dcf: timing fields must be non-negative (slot positive)");
    if (phy_header_bits < 0 || mac_header_bits < 0 || ack_bits < 0 || payload_bits <= 0 ||
        bit_rate_mbps <= 0)
      throw std::invalid_argument("dcf: frame fields must be positive");
  }

  double header_us() const { return (phy_header_bits + mac_header_bits) / bit_rate_mbps; }
  double payload_us() const { return payload_bits / bit_rate_mbps; }
  double ack_us() const { return (phy_header_bits + ack_bits) / bit_rate_mbps; }
  // busy time seen by everyone for a success and for a collision
  double success_us() const {
    return header_us() + payload_us() + sifs_us + prop_delay_us + ack_us() + difs_us + prop_delay_us;
  }
  double collision_us() const { return header_us() + payload_us() + difs_us + prop_delay_us; }
};

inline double saturation_throughput(const DcfParams& d, int n_stations, double tau) {
  if (n_stations < 1) throw std::invalid_argument("saturation_throughput: need at least one station");
  if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("saturation_throughput: tau outside [0, 1]");
  if (tau == 0.0) return 0.0;  // nobody ever transmits
  const double p_tr = 1.0 - std::pow(1.0 - tau, n_stations);
  const double p_s = n_stations * tau * std::pow(1.0 - tau, n_stations - 1) / p_tr;
  const double num = p_s * p_tr * d.payload_us();
  const double den = (1.0 - p_tr) * d.slot_us + p_tr * p_s * d.success_us() +
                     p_tr * (1.0 - p_s) * d.collision_us();
  return num / den;
}

struct DcfPeak {
  double tau = 0.0;
  double throughput = 0.0;
};

// Peak over tau, searched in log space since the optimum scales like 1/n.
inline DcfPeak peak_throughput(const DcfParams& d, int n_stations) {
  const GoldenResult r = golden_max(
      [&](double u) { return saturation_throughput(d, n_stations, std::exp(u)); },
      std::log(1e-6), std::log(0.5), 200);
  return {std::exp(r.x), r.fx};
}

// Slot-level Monte Carlo of the same contention process: every station
// transmits independently with probability tau in each slot. Used to check
// the closed form, so it shares no algebra with it. The per-slot transmitter
// count comes from inverting the binomial CDF on a single uniform draw.
inline double simulated_throughput(const DcfParams& d, int n_stations, double tau,
                                   std::uint64_t slots, std::uint64_t seed) {
  if (n_stations < 1) throw std::invalid_argument("simulated_throughput: need at least one station");
  if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("simulated_throughput: tau outside [0, 1]");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

  // binomial pmf table for k transmitters out of n
  std::vector<double> cdf(static_cast<size_t>(n_stations) + 1);
  {
    double pmf = std::pow(1.0 - tau, n_stations);
    double acc = pmf;
    cdf[0] = acc;
    for (int k = 0; k + 1 <= n_stations; ++k) {
      if (tau < 1.0)
        pmf *= (static_cast<double>(n_stations - k) / (k + 1)) * (tau / (1.0 - tau));
      else
        pmf = (k + 1 == n_stations) ? 1.0 : 0.0;
      acc += pmf;
      cdf[static_cast<size_t>(k) + 1] = acc;
    }
    cdf[static_cast<size_t>(n_stations)] = 1.0;
  }

  double busy_us = 0.0;
  double payload_us_acc = 0.0;
  for (std::uint64_t i = 0; i < slots; ++i) {
    const double u = uniform();
    int k = 0;
    while (cdf[static_cast<size_t>(k)] < u) ++k;
    if (k == 0) {
      busy_us += d.slot_us;
    } else if (k == 1) {
      busy_us += d.success_us();
      payload_us_acc += d.payload_us();
    } else {
      busy_us += d.collision_us();
    }
  }
  return busy_us > 0.0 ? payload_us_acc / busy_us : 0.0;
}

}  // namespace uavplan
