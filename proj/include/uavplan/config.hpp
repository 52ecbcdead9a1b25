#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavplan/harness.hpp"
#include "uavplan/planner.hpp"

// JSON <-> struct adapters for the CLI. Absent keys keep the struct
// defaults, so a config file only needs the fields it changes.

namespace uavplan {

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

// "a.b.c=value" overrides one key; the value is parsed as JSON when it looks
// like JSON, otherwise taken as a string.
inline void apply_override(nlohmann::json& root, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::runtime_error("bad --set '" + spec + "', expected path.to.key=value");
  const std::string path = spec.substr(0, eq);
  const std::string raw = spec.substr(eq + 1);
  nlohmann::json val = nlohmann::json::parse(raw, nullptr, false);
  if (val.is_discarded()) val = raw;

  nlohmann::json* node = &root;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw std::runtime_error("bad --set path '" + path + "'");
    if (dot == std::string::npos) {
      (*node)[key] = val;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

namespace detail {

inline Vec2 vec2_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error(std::string(what) + " must be a [x, y] array");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  if (j.contains("geometry")) {
    const auto& g = j.at("geometry");
    if (g.contains("sender")) s.geometry.sender = detail::vec2_from_json(g.at("sender"), "geometry.sender");
    if (g.contains("receiver"))
      s.geometry.receiver = detail::vec2_from_json(g.at("receiver"), "geometry.receiver");
    else if (g.contains("initial_separation_m"))
      s.geometry.receiver = {s.geometry.sender.x + g.at("initial_separation_m").get<double>(),
                             s.geometry.sender.y};
  }
  if (j.contains("channel")) {
    const auto& c = j.at("channel");
    auto& ch = s.channel;
    ch.carrier_frequency_hz = c.value("carrier_frequency_hz", ch.carrier_frequency_hz);
    ch.sigmoid_a = c.value("sigmoid_a", ch.sigmoid_a);
    ch.sigmoid_b = c.value("sigmoid_b", ch.sigmoid_b);
    ch.excess_loss_los_db = c.value("excess_loss_los_db", ch.excess_loss_los_db);
    ch.excess_loss_nlos_db = c.value("excess_loss_nlos_db", ch.excess_loss_nlos_db);
  }
  if (j.contains("compute")) {
    const auto& c = j.at("compute");
    auto& cp = s.compute;
    cp.cpu_frequency_hz = c.value("cpu_frequency_hz", cp.cpu_frequency_hz);
    cp.effective_capacitance = c.value("effective_capacitance", cp.effective_capacitance);
    cp.cycles_per_redundant_bit = c.value("cycles_per_redundant_bit", cp.cycles_per_redundant_bit);
    cp.max_elimination_fraction = c.value("max_elimination_fraction", cp.max_elimination_fraction);
    cp.initial_gap = c.value("initial_gap", cp.initial_gap);
    cp.waterfilling_cycle_scale = c.value("waterfilling_cycle_scale", cp.waterfilling_cycle_scale);
  }
  if (j.contains("radio")) {
    const auto& r = j.at("radio");
    auto& ra = s.radio;
    ra.bandwidth_hz = r.value("bandwidth_hz", ra.bandwidth_hz);
    ra.noise_psd_dbm_hz = r.value("noise_psd_dbm_hz", ra.noise_psd_dbm_hz);
    ra.max_tx_power_w = r.value("max_tx_power_w", ra.max_tx_power_w);
  }
  if (j.contains("propulsion")) {
    const auto& p = j.at("propulsion");
    auto& pr = s.propulsion;
    pr.blade_profile_power_w = p.value("blade_profile_power_w", pr.blade_profile_power_w);
    pr.induced_power_w = p.value("induced_power_w", pr.induced_power_w);
    pr.tip_speed_ms = p.value("tip_speed_ms", pr.tip_speed_ms);
    pr.mean_rotor_velocity_ms = p.value("mean_rotor_velocity_ms", pr.mean_rotor_velocity_ms);
    pr.fuselage_drag_ratio = p.value("fuselage_drag_ratio", pr.fuselage_drag_ratio);
    pr.air_density_kgm3 = p.value("air_density_kgm3", pr.air_density_kgm3);
    pr.rotor_solidity = p.value("rotor_solidity", pr.rotor_solidity);
    pr.rotor_disc_area_m2 = p.value("rotor_disc_area_m2", pr.rotor_disc_area_m2);
  }
  s.packet_bits = j.value("packet_bits", s.packet_bits);
  s.delay_constraint_s = j.value("delay_constraint_s", s.delay_constraint_s);
  s.validate();
  return s;
}

inline SweepSpec sweep_from_json(const nlohmann::json& j) {
  SweepSpec spec = SweepSpec::default_grid();
  if (!j.contains("sweep")) return spec;
  const auto& sw = j.at("sweep");
  if (sw.contains("packet_bits")) {
    spec.packet_bits_grid.clear();
    for (const auto& v : sw.at("packet_bits")) spec.packet_bits_grid.push_back(v.get<double>());
  } else if (sw.contains("packet_min_bits") && sw.contains("packet_max_bits")) {
    const double lo = sw.at("packet_min_bits").get<double>();
    const double hi = sw.at("packet_max_bits").get<double>();
    const int pts = sw.value("points", 10);
    if (pts < 2 || lo <= 0 || hi <= lo) throw std::runtime_error("sweep: bad packet grid");
    spec.packet_bits_grid.clear();
    for (int i = 0; i < pts; ++i)
      spec.packet_bits_grid.push_back(lo + (hi - lo) * i / (pts - 1));
  }
  if (spec.packet_bits_grid.empty()) throw std::runtime_error("sweep: empty packet grid");
  return spec;
}

inline DcfSweepSpec dcf_spec_from_json(const nlohmann::json& j) {
  DcfSweepSpec spec;
  if (!j.contains("dcf")) return spec;
  const auto& d = j.at("dcf");
  auto& p = spec.params;
  p.slot_us = d.value("slot_us", p.slot_us);
  p.sifs_us = d.value("sifs_us", p.sifs_us);
  p.difs_us = d.value("difs_us", p.difs_us);
  p.prop_delay_us = d.value("prop_delay_us", p.prop_delay_us);
  p.phy_header_bits = d.value("phy_header_bits", p.phy_header_bits);
  p.mac_header_bits = d.value("mac_header_bits", p.mac_header_bits);
  p.ack_bits = d.value("ack_bits", p.ack_bits);
  p.payload_bits = d.value("payload_bits", p.payload_bits);
  p.bit_rate_mbps = d.value("bit_rate_mbps", p.bit_rate_mbps);
  if (d.contains("n_stations")) {
    spec.n_stations.clear();
    for (const auto& v : d.at("n_stations")) spec.n_stations.push_back(v.get<int>());
  }
  spec.tau_points = d.value("tau_points", spec.tau_points);
  spec.tau_min = d.value("tau_min", spec.tau_min);
  spec.tau_max = d.value("tau_max", spec.tau_max);
  spec.mc_slots = d.value("mc_slots", spec.mc_slots);
  return spec;
}

inline OrientThresholds thresholds_from_json(const nlohmann::json& j) {
  OrientThresholds th;
  if (!j.contains("orient_thresholds")) return th;
  const auto& t = j.at("orient_thresholds");
  th.retx_saturation_fraction = t.value("retx_saturation_fraction", th.retx_saturation_fraction);
  th.loss_rate_threshold = t.value("loss_rate_threshold", th.loss_rate_threshold);
  th.interference_idle_dbm = t.value("interference_idle_dbm", th.interference_idle_dbm);
  th.rssi_floor_dbm = t.value("rssi_floor_dbm", th.rssi_floor_dbm);
  th.validate();
  return th;
}

inline Cause cause_from_string(const std::string& s) {
  if (s == "nominal") return Cause::nominal;
  if (s == "collision") return Cause::collision;
  if (s == "interference") return Cause::interference;
  if (s == "shadowing") return Cause::shadowing;
  throw std::runtime_error("unknown cause label '" + s + "'");
}

inline std::vector<OrientTraceEntry> trace_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::runtime_error("trace must be a JSON array of records");
  std::vector<OrientTraceEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& rec = j[i];
    try {
      OrientTraceEntry e;
      auto& o = e.observation;
      o.avg_retransmissions = rec.at("avg_retransmissions").get<double>();
      o.max_retransmissions = rec.at("max_retransmissions").get<double>();
      o.packet_loss_rate = rec.at("packet_loss_rate").get<double>();
      o.rssi_dbm = rec.at("rssi_dbm").get<double>();
      o.idle_channel_energy_dbm = rec.at("idle_channel_energy_dbm").get<double>();
      o.sinr_db = rec.value("sinr_db", o.sinr_db);
      if (rec.contains("label")) e.label = cause_from_string(rec.at("label").get<std::string>());
      o.validate();
      out.push_back(e);
    } catch (const std::exception& ex) {
      throw std::runtime_error("trace record " + std::to_string(i) + ": " + ex.what());
    }
  }
  return out;
}

}  // namespace uavplan
