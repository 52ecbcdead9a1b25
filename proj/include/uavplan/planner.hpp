#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uavplan/computation.hpp"
#include "uavplan/geometry_channel.hpp"
#include "uavplan/link.hpp"
#include "uavplan/numeric.hpp"
#include "uavplan/propulsion.hpp"

namespace uavplan {

struct Scenario {
  Geometry geometry;
  ChannelParams channel;
  ComputeParams compute;
  RadioParams radio;
  PropulsionParams propulsion;
  double packet_bits = 5e7;
  double delay_constraint_s = 25.0;

  void validate() const {
    geometry.validate();
    channel.validate();
    compute.validate();
    radio.validate();
    propulsion.validate();
    if (packet_bits < 0) throw std::invalid_argument("scenario: packet_bits must be nonnegative");
    if (delay_constraint_s <= 0) throw std::invalid_argument("scenario: delay constraint must be positive");
  }
};

// A mission plan: compute, then fly at the maximum-range speed along a fixed
// heading, then hover and transmit. Heading 0 points at the receiver.
struct Plan {
  double t_pre_s = 0.0;     // redundancy-elimination time
  double t_wf_s = 0.0;      // waterfilling / code-adaptation time
  double t_fly_s = 0.0;
  double heading_rad = 0.0;
  double tx_power_w = 0.0;
};

struct PlanEvaluation {
  double t_pre_s = 0.0;
  double t_wf_s = 0.0;
  double t_fly_s = 0.0;
  double t_tx_s = 0.0;
  double t_total_s = 0.0;
  double e_comp_j = 0.0;
  double e_fly_j = 0.0;
  double e_tx_j = 0.0;
  double e_hover_j = 0.0;
  double e_total_j = 0.0;
  double residual_bits = 0.0;
  double gap = 1.0;
  double rate_bps = 0.0;
  double final_distance_m = 0.0;
  double deviation_deg = 0.0;
  double gain_db = 0.0;
  Vec2 final_position{0.0, 0.0};
  bool feasible = false;
};

// Slop on the delay constraint so that plans sized exactly to the deadline by
// the closed-form power inversion do not flip infeasible over rounding.
inline constexpr double kFeasibilityTolS = 1e-9;

// Search grids (coarse, deterministic). Compute times in 0.25 s steps up to
// 5 s, flight in 0.5 s steps up to 20 s (clipped by the deadline), heading on
// a 1 degree grid with golden-section refinement inside the winning degree.
inline constexpr double kComputeGridStepS = 0.25;
inline constexpr double kComputeGridMaxS = 5.0;
inline constexpr double kFlyGridStepS = 0.5;
inline constexpr double kFlyGridMaxS = 20.0;
inline constexpr int kHeadingRefineIters = 60;
inline constexpr int kPowerSearchIters = 30;

class InfeasibleScenario : public std::runtime_error {
 public:
  InfeasibleScenario(std::string msg, Plan p, PlanEvaluation ev)
      : std::runtime_error(std::move(msg)), least_violating_plan(p), least_violating_eval(ev) {}
  Plan least_violating_plan;
  PlanEvaluation least_violating_eval;
};

namespace detail {

struct PlanContext {
  double v_mr_ms = 0.0;
  double hover_power_w = 0.0;
  double fly_power_w = 0.0;
};

inline PlanContext make_context(const Scenario& s) {
  PlanContext ctx;
  ctx.v_mr_ms = max_range_speed(s.propulsion);
  ctx.hover_power_w = hover_power(s.propulsion);
  ctx.fly_power_w = propulsion_power(s.propulsion, ctx.v_mr_ms);
  return ctx;
}

inline PlanEvaluation evaluate_with(const Scenario& s, const PlanContext& ctx, const Plan& p) {
  PlanEvaluation ev;
  ev.t_pre_s = p.t_pre_s;
  ev.t_wf_s = p.t_wf_s;
  ev.t_fly_s = p.t_fly_s;

  const double resid = residual_bits(s.compute, s.packet_bits, p.t_pre_s);
  const double gap = gap_coefficient(s.compute, p.t_wf_s);
  ev.residual_bits = resid;
  ev.gap = gap;
  ev.final_position = final_position(s.geometry, p.heading_rad, ctx.v_mr_ms, p.t_fly_s);
  ev.final_distance_m = distance(ev.final_position, s.geometry.receiver);
  ev.deviation_deg = deviation_angle_deg(s.geometry, ev.final_position);

  TransmissionPhase tx;
  if (ev.final_distance_m > 0.0) {
    ev.gain_db = channel_power_gain_db(s.channel, ev.final_distance_m, ev.deviation_deg);
    tx = transmission_phase(s.radio, resid, p.tx_power_w, ev.gain_db, gap);
  } else {
    // flew into the receiver; the far-field model has nothing sensible to
    // say, treat the link as dead rather than extrapolate the gain
    ev.gain_db = -std::numeric_limits<double>::infinity();
    tx = TransmissionPhase{0.0, std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity()};
    if (resid == 0.0) tx = TransmissionPhase{0.0, 0.0, 0.0};
  }
  ev.rate_bps = tx.rate_bps;
  ev.t_tx_s = tx.duration_s;
  ev.t_total_s = p.t_pre_s + p.t_wf_s + p.t_fly_s + ev.t_tx_s;
  ev.e_comp_j = computation_energy_j(s.compute, p.t_pre_s + p.t_wf_s);
  ev.e_fly_j = ctx.fly_power_w * p.t_fly_s;
  ev.e_tx_j = tx.energy_j;
  ev.e_hover_j = ctx.hover_power_w * (p.t_pre_s + p.t_wf_s + ev.t_tx_s);
  ev.e_total_j = ev.e_comp_j + ev.e_fly_j + ev.e_tx_j + ev.e_hover_j;
  ev.feasible = std::isfinite(ev.t_total_s) && ev.t_total_s <= s.delay_constraint_s + kFeasibilityTolS;
  return ev;
}

inline double heading_gain_db(const Scenario& s, double v_mr, double t_fly, double heading_rad) {
  const Vec2 pos = final_position(s.geometry, heading_rad, v_mr, t_fly);
  const double d = distance(pos, s.geometry.receiver);
  if (d <= 0.0) return -std::numeric_limits<double>::infinity();
  return channel_power_gain_db(s.channel, d, deviation_angle_deg(s.geometry, pos));
}

// 1 degree grid walked outward from 0 (0, +1, -1, ..., +180), strict
// improvement only, so ties resolve to the smaller deflection and the
// positive side. Golden-section polish inside the winning +-1 degree is kept
// only when it actually beats the grid point.
inline double optimize_heading_with(const Scenario& s, double v_mr, double t_fly) {
  if (t_fly <= 0.0 || v_mr <= 0.0) return 0.0;
  double best_h = 0.0;
  double best_g = heading_gain_db(s, v_mr, t_fly, 0.0);
  for (int k = 1; k <= 180; ++k) {
    for (int sign : {+1, -1}) {
      if (k == 180 && sign < 0) continue;  // -180 repeats +180
      const double h = deg_to_rad(sign * k);
      const double g = heading_gain_db(s, v_mr, t_fly, h);
      if (g > best_g) {
        best_g = g;
        best_h = h;
      }
    }
  }
  const GoldenResult r =
      golden_max([&](double h) { return heading_gain_db(s, v_mr, t_fly, h); },
                 best_h - deg_to_rad(1.0), best_h + deg_to_rad(1.0), kHeadingRefineIters);
  return r.fx > best_g ? r.x : best_h;
}

// Smallest transmit power whose rate ships resid bits inside t_budget,
// inverted from the gap-adjusted Shannon rate. Returns infinity when the
// requirement overflows, callers clamp against max power anyway.
inline double required_power_w(const Scenario& s, double resid_bits, double gain_db, double gap,
                               double t_budget_s) {
  const double x = resid_bits / t_budget_s / s.radio.bandwidth_hz;
  if (x > 1020.0) return std::numeric_limits<double>::infinity();
  const double g_lin = std::pow(10.0, gain_db / 10.0);
  return (std::exp2(x) - 1.0) * gap * noise_power_w(s.radio) / g_lin;
}

}  // namespace detail

inline PlanEvaluation evaluate_plan(const Scenario& s, const Plan& p) {
  s.validate();
  if (p.t_pre_s < 0 || p.t_wf_s < 0 || p.t_fly_s < 0 || p.tx_power_w < 0)
    throw std::invalid_argument("evaluate_plan: negative plan component");
  if (p.tx_power_w > s.radio.max_tx_power_w)
    throw std::invalid_argument("evaluate_plan: tx power above radio limit");
  return detail::evaluate_with(s, detail::make_context(s), p);
}

inline double optimize_heading(const Scenario& s, double t_fly_s) {
  s.validate();
  if (t_fly_s < 0) throw std::invalid_argument("optimize_heading: negative flight time");
  return detail::optimize_heading_with(s, max_range_speed(s.propulsion), t_fly_s);
}

struct PlannerOptions {
  // Pin transmit power to the radio maximum instead of optimizing it.
  bool pin_power_to_max = false;
};

namespace detail {

inline bool better_candidate(const PlanEvaluation& a, const PlanEvaluation& b) {
  if (a.e_total_j != b.e_total_j) return a.e_total_j < b.e_total_j;
  if (a.t_total_s != b.t_total_s) return a.t_total_s < b.t_total_s;
  return a.t_fly_s < b.t_fly_s;
}

inline bool lesser_violation(const PlanEvaluation& a, const PlanEvaluation& b) {
  if (a.t_total_s != b.t_total_s) return a.t_total_s < b.t_total_s;
  return a.e_total_j < b.e_total_j;
}

inline std::pair<Plan, PlanEvaluation> optimize_impl(const Scenario& s, bool with_compute,
                                                     const PlannerOptions& opt) {
  s.validate();
  const PlanContext ctx = make_context(s);
  const double p_max = s.radio.max_tx_power_w;

  std::vector<double> compute_grid{0.0};
  if (with_compute)
    for (int i = 1; i * kComputeGridStepS <= kComputeGridMaxS + 1e-12; ++i)
      compute_grid.push_back(i * kComputeGridStepS);

  const double fly_max = std::min(kFlyGridMaxS, s.delay_constraint_s);
  std::vector<double> fly_grid;
  for (int i = 0; i * kFlyGridStepS <= fly_max + 1e-12; ++i) fly_grid.push_back(i * kFlyGridStepS);

  // heading depends only on t_fly, hoist it out of the compute loops
  std::vector<double> headings(fly_grid.size());
  for (size_t i = 0; i < fly_grid.size(); ++i)
    headings[i] = optimize_heading_with(s, ctx.v_mr_ms, fly_grid[i]);

  bool have_best = false;
  Plan best_plan;
  PlanEvaluation best_ev;
  bool have_viol = false;
  Plan viol_plan;
  PlanEvaluation viol_ev;

  auto consider = [&](const Plan& p, const PlanEvaluation& ev) {
    if (ev.feasible) {
      if (!have_best || better_candidate(ev, best_ev)) {
        have_best = true;
        best_plan = p;
        best_ev = ev;
      }
    } else if (!have_viol || lesser_violation(ev, viol_ev)) {
      have_viol = true;
      viol_plan = p;
      viol_ev = ev;
    }
  };

  for (double t_pre : compute_grid) {
    const double resid = residual_bits(s.compute, s.packet_bits, t_pre);
    for (double t_wf : compute_grid) {
      const double gap = gap_coefficient(s.compute, t_wf);
      for (size_t fi = 0; fi < fly_grid.size(); ++fi) {
        const double t_fly = fly_grid[fi];
        const double heading = headings[fi];

        if (resid == 0.0) {
          // nothing left to send; power setting is moot, keep the radio limit
          Plan p{t_pre, t_wf, t_fly, heading, p_max};
          consider(p, evaluate_with(s, ctx, p));
          continue;
        }

        Plan at_pmax{t_pre, t_wf, t_fly, heading, p_max};
        const PlanEvaluation ev_pmax = evaluate_with(s, ctx, at_pmax);
        if (!ev_pmax.feasible || opt.pin_power_to_max) {
          consider(at_pmax, ev_pmax);
          continue;
        }

        const double t_budget = s.delay_constraint_s - (t_pre + t_wf + t_fly);
        const double gain = ev_pmax.gain_db;
        double p_lo = p_max;
        if (t_budget > 0.0) {
          const double p_req = required_power_w(s, resid, gain, gap, t_budget);
          // nudge above the exact requirement so the inversion's rounding
          // cannot land the golden-section endpoint on the infeasible side
          p_lo = std::min(p_req * (1.0 + 1e-12), p_max);
        }
        const GoldenResult g = golden_min(
            [&](double pw) {
              Plan cand{t_pre, t_wf, t_fly, heading, pw};
              return evaluate_with(s, ctx, cand).e_total_j;
            },
            p_lo, p_max, kPowerSearchIters);
        Plan tuned{t_pre, t_wf, t_fly, heading, g.x};
        PlanEvaluation ev_tuned = evaluate_with(s, ctx, tuned);
        if (!ev_tuned.feasible) {
          tuned = at_pmax;
          ev_tuned = ev_pmax;
        }
        consider(tuned, ev_tuned);
      }
    }
  }

  if (!have_best) {
    if (!have_viol) throw std::logic_error("optimizer enumerated no plans");
    throw InfeasibleScenario(
        "no feasible plan: best achievable total time " + std::to_string(viol_ev.t_total_s) +
            " s exceeds the delay constraint " + std::to_string(s.delay_constraint_s) + " s",
        viol_plan, viol_ev);
  }
  return {best_plan, best_ev};
}

}  // namespace detail

// Compute-and-send planner: preprocessing, waterfilling, flight, heading and
// transmit power are all searched jointly.
inline std::pair<Plan, PlanEvaluation> optimize_cps(const Scenario& s, const PlannerOptions& opt = {}) {
  return detail::optimize_impl(s, true, opt);
}

// Baseline without on-board computation (t_pre = t_wf = 0); everything else
// is searched the same way, including transmit power.
inline std::pair<Plan, PlanEvaluation> optimize_jpcc(const Scenario& s, const PlannerOptions& opt = {}) {
  return detail::optimize_impl(s, false, opt);
}

}  // namespace uavplan
