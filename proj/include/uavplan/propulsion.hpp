#pragma once

#include <cmath>
#include <stdexcept>

#include "uavplan/numeric.hpp"

namespace uavplan {

// Rotary-wing propulsion model: blade profile + induced + parasite power.
// Defaults describe a ~1.5 kg quadrotor cruising at sea level.
struct PropulsionParams {
  double blade_profile_power_w = 79.8563;   // P0
  double induced_power_w = 88.6279;         // Pi
  double tip_speed_ms = 120.0;              // Utip
  double mean_rotor_velocity_ms = 4.03;     // v0, induced velocity in hover
  double fuselage_drag_ratio = 0.6;         // d0
  double air_density_kgm3 = 1.225;          // rho
  double rotor_solidity = 0.05;             // s
  double rotor_disc_area_m2 = 0.503;        // A

  void validate() const {
    if (blade_profile_power_w <= 0 || induced_power_w <= 0 || tip_speed_ms <= 0 ||
        mean_rotor_velocity_ms <= 0 || fuselage_drag_ratio <= 0 ||
        air_density_kgm3 <= 0 || rotor_solidity <= 0 || rotor_disc_area_m2 <= 0)
      throw std::invalid_argument("propulsion parameters must be positive");
  }
};

inline double propulsion_power(const PropulsionParams& p, double speed_ms) {
  if (speed_ms < 0) throw std::invalid_argument("propulsion_power: negative speed");
  const double blade =
      p.blade_profile_power_w * (1.0 + 3.0 * speed_ms * speed_ms / (p.tip_speed_ms * p.tip_speed_ms));
  // Induced term rewritten as Pi/sqrt(sqrt(1+x^2)+x) with x = V^2/(2 v0^2);
  // algebraically equal to the textbook sqrt(sqrt(1+x^2)-x) form but avoids
  // cancellation at high speed.
  const double x = speed_ms * speed_ms / (2.0 * p.mean_rotor_velocity_ms * p.mean_rotor_velocity_ms);
  const double induced = p.induced_power_w * std::sqrt(1.0 / (std::sqrt(1.0 + x * x) + x));
  const double parasite = 0.5 * p.fuselage_drag_ratio * p.air_density_kgm3 * p.rotor_solidity *
                          p.rotor_disc_area_m2 * speed_ms * speed_ms * speed_ms;
  return blade + induced + parasite;
}

inline double hover_power(const PropulsionParams& p) { return propulsion_power(p, 0.0); }

// Maximum-range speed: argmin over V of energy per meter P(V)/V.
// Coarse 0.5 m/s scan over (0, 60] pins the bracket, golden section refines it.
inline double max_range_speed(const PropulsionParams& p) {
  double best_v = 0.5;
  double best = propulsion_power(p, 0.5) / 0.5;
  for (int i = 2; i <= 120; ++i) {
    const double v = 0.5 * i;
    const double ratio = propulsion_power(p, v) / v;
    if (ratio < best) {
      best = ratio;
      best_v = v;
    }
  }
  const double lo = std::max(best_v - 0.5, 1e-6);
  const double hi = std::min(best_v + 0.5, 60.0);
  return golden_min([&](double v) { return propulsion_power(p, v) / v; }, lo, hi, 60).x;
}

}  // namespace uavplan
