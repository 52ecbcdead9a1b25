#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace uavplan {

// One measurement window of link-layer statistics, as a monitoring agent
// would report them.
struct LinkObservation {
  double avg_retransmissions = 0.0;
  double max_retransmissions = 7.0;
  double packet_loss_rate = 0.0;
  double rssi_dbm = -60.0;
  double idle_channel_energy_dbm = -100.0;
  double sinr_db = 20.0;

  void validate() const {
    if (max_retransmissions < 1) throw std::invalid_argument("observation: max_retransmissions below 1");
    if (avg_retransmissions < 0) throw std::invalid_argument("observation: negative avg_retransmissions");
    if (packet_loss_rate < 0 || packet_loss_rate > 1)
      throw std::invalid_argument("observation: packet_loss_rate outside [0, 1]");
  }
};

enum class Cause { nominal, collision, interference, shadowing };
enum class IssueDimension { communication, control };

struct OrientThresholds {
  double retx_saturation_fraction = 0.9;
  double loss_rate_threshold = 0.1;
  double interference_idle_dbm = -90.0;   // idle energy above this means a loud floor
  double rssi_floor_dbm = -95.0;

  void validate() const {
    if (retx_saturation_fraction <= 0 || retx_saturation_fraction > 1)
      throw std::invalid_argument("thresholds: retx_saturation_fraction outside (0, 1]");
    if (loss_rate_threshold < 0 || loss_rate_threshold > 1)
      throw std::invalid_argument("thresholds: loss_rate_threshold outside [0, 1]");
  }
};

struct Orientation {
  Cause cause = Cause::nominal;
  IssueDimension issue_dimension = IssueDimension::communication;
  const char* rationale = "";
};

inline const char* to_string(Cause c) {
  switch (c) {
    case Cause::nominal: return "nominal";
    case Cause::collision: return "collision";
    case Cause::interference: return "interference";
    case Cause::shadowing: return "shadowing";
  }
  return "?";
}

inline const char* to_string(IssueDimension d) {
  return d == IssueDimension::communication ? "communication" : "control";
}

// Rule table, checked in order. Retransmission saturation with a loud idle
// channel reads as external interference; saturation with a quiet channel
// and a weak signal reads as shadowing, which is a positioning (control)
// problem rather than a protocol one. Unsaturated retries with high loss
// point at contention collisions.
inline Orientation orient(const LinkObservation& o, const OrientThresholds& th = {}) {
  o.validate();
  th.validate();
  const bool saturated = o.avg_retransmissions >= th.retx_saturation_fraction * o.max_retransmissions;
  if (saturated && o.idle_channel_energy_dbm > th.interference_idle_dbm)
    return {Cause::interference, IssueDimension::communication,
            "retransmissions saturated while the idle channel is loud"};
  if (saturated && o.rssi_dbm < th.rssi_floor_dbm)
    return {Cause::shadowing, IssueDimension::control,
            "retransmissions saturated on a quiet channel with weak signal"};
  if (!saturated && o.packet_loss_rate > th.loss_rate_threshold)
    return {Cause::collision, IssueDimension::communication,
            "losses without retransmission saturation point at contention"};
  return {Cause::nominal, IssueDimension::communication, "no rule fired"};
}

struct LabeledObservation {
  LinkObservation observation;
  Cause expected = Cause::nominal;
};

enum class EnvironmentProfile { collision_heavy, interference_heavy, shadowed };

// Scripted traces for the three canned environments. Values cycle through
// small deterministic patterns that stay well inside their regions, so the
// expected cause is unambiguous.
inline std::vector<LabeledObservation> make_profile_trace(EnvironmentProfile profile, int count) {
  if (count < 0) throw std::invalid_argument("make_profile_trace: negative count");
  std::vector<LabeledObservation> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    LinkObservation o;
    Cause expected = Cause::nominal;
    switch (profile) {
      case EnvironmentProfile::collision_heavy:
        o.avg_retransmissions = 0.5 + 0.25 * (i % 8);
        o.max_retransmissions = 7.0;
        o.packet_loss_rate = 0.15 + 0.03 * (i % 5);
        o.rssi_dbm = -62.0 - (i % 9);
        o.idle_channel_energy_dbm = -99.0 + (i % 4);
        o.sinr_db = 9.0 + (i % 6);
        expected = Cause::collision;
        break;
      case EnvironmentProfile::interference_heavy:
        o.avg_retransmissions = 6.4 + 0.06 * (i % 10);
        o.max_retransmissions = 7.0;
        o.packet_loss_rate = 0.35 + 0.04 * (i % 6);
        o.rssi_dbm = -66.0 - (i % 8);
        o.idle_channel_energy_dbm = -78.0 + (i % 6);
        o.sinr_db = 3.0 + (i % 4);
        expected = Cause::interference;
        break;
      case EnvironmentProfile::shadowed:
        o.avg_retransmissions = 6.5 + 0.05 * (i % 9);
        o.max_retransmissions = 7.0;
        o.packet_loss_rate = 0.3 + 0.05 * (i % 5);
        o.rssi_dbm = -101.0 - (i % 7);
        o.idle_channel_energy_dbm = -102.0 + (i % 5);
        o.sinr_db = -2.0 + (i % 3);
        expected = Cause::shadowing;
        break;
    }
    out.push_back({o, expected});
  }
  return out;
}

}  // namespace uavplan
