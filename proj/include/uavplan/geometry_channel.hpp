#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uavplan/numeric.hpp"

namespace uavplan {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Plan-view geometry. The sender starts on the line of sight axis of the
// receiver; everything is measured in the ground plane.
struct Geometry {
  Vec2 sender{0.0, 0.0};
  Vec2 receiver{500.0, 0.0};

  void validate() const {
    if (distance(sender, receiver) <= 0)
      throw std::invalid_argument("geometry: sender and receiver coincide");
  }
};

// Probability-weighted LoS/NLoS air-to-ground channel. The sigmoid steers
// between the two excess-loss classes as the deviation angle at the receiver
// opens up; excess losses are averaged in dB.
struct ChannelParams {
  double carrier_frequency_hz = 5e9;
  double sigmoid_a = 15.0;
  double sigmoid_b = 0.12;
  double excess_loss_los_db = 1.0;
  double excess_loss_nlos_db = 20.0;

  void validate() const {
    if (carrier_frequency_hz <= 0) throw std::invalid_argument("channel: frequency must be positive");
    if (sigmoid_a <= 0 || sigmoid_b <= 0) throw std::invalid_argument("channel: sigmoid constants must be positive");
    if (excess_loss_los_db < 0 || excess_loss_nlos_db < excess_loss_los_db)
      throw std::invalid_argument("channel: excess losses must satisfy 0 <= eta_los <= eta_nlos");
  }
};

inline Vec2 final_position(const Geometry& g, double heading_rad, double speed_ms, double t_fly_s) {
  if (speed_ms < 0 || t_fly_s < 0) throw std::invalid_argument("final_position: negative speed or time");
  // heading 0 points along sender -> receiver; positive angles rotate CCW
  const double ax = g.receiver.x - g.sender.x;
  const double ay = g.receiver.y - g.sender.y;
  const double base = std::atan2(ay, ax);
  const double d = speed_ms * t_fly_s;
  return {g.sender.x + d * std::cos(base + heading_rad), g.sender.y + d * std::sin(base + heading_rad)};
}

// Angle at the receiver between the ray back to the sender's start point and
// the ray to the given position, in degrees. Degenerate cases collapse to 0.
inline double deviation_angle_deg(const Geometry& g, const Vec2& pos) {
  const double sx = g.sender.x - g.receiver.x;
  const double sy = g.sender.y - g.receiver.y;
  const double px = pos.x - g.receiver.x;
  const double py = pos.y - g.receiver.y;
  const double ns = std::hypot(sx, sy);
  const double np = std::hypot(px, py);
  if (ns == 0.0 || np == 0.0) return 0.0;
  const double c = std::clamp((sx * px + sy * py) / (ns * np), -1.0, 1.0);
  return rad_to_deg(std::acos(c));
}

inline double los_probability(const ChannelParams& ch, double deviation_deg) {
  const double p = 1.0 / (1.0 + ch.sigmoid_a * std::exp(-ch.sigmoid_b * (deviation_deg - ch.sigmoid_a)));
  return std::clamp(p, 0.0, 1.0);
}

inline double free_space_path_loss_db(double distance_m, double frequency_hz) {
  if (distance_m <= 0) throw std::invalid_argument("free_space_path_loss_db: distance must be positive");
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / kSpeedOfLight);
}

inline double channel_power_gain_db(const ChannelParams& ch, double distance_m, double deviation_deg) {
  const double fspl = free_space_path_loss_db(distance_m, ch.carrier_frequency_hz);
  const double p = los_probability(ch, deviation_deg);
  return -(fspl + p * ch.excess_loss_los_db + (1.0 - p) * ch.excess_loss_nlos_db);
}

inline double channel_power_gain_db(const ChannelParams& ch, const Geometry& g, const Vec2& pos) {
  return channel_power_gain_db(ch, distance(pos, g.receiver), deviation_angle_deg(g, pos));
}

}  // namespace uavplan
