#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "uavplan/planner.hpp"

using namespace uavplan;
using Catch::Approx;

namespace {

// rebuild every evaluation field from the public module functions, in the
// documented compute -> fly -> transmit order; the planner must match this
// composition bit for bit
struct Recomposed {
  double t_tx, t_total, e_comp, e_fly, e_tx, e_hover, e_total;
  double resid, gap, rate, dist, dev, gain;
  bool feasible;
};

Recomposed recompose(const Scenario& s, const Plan& p) {
  const double vmr = max_range_speed(s.propulsion);
  const double hov = hover_power(s.propulsion);
  const double fly_w = propulsion_power(s.propulsion, vmr);
  Recomposed r{};
  r.resid = residual_bits(s.compute, s.packet_bits, p.t_pre_s);
  r.gap = gap_coefficient(s.compute, p.t_wf_s);
  const Vec2 pos = final_position(s.geometry, p.heading_rad, vmr, p.t_fly_s);
  r.dist = distance(pos, s.geometry.receiver);
  r.dev = deviation_angle_deg(s.geometry, pos);
  TransmissionPhase tx;
  if (r.dist > 0.0) {
    r.gain = channel_power_gain_db(s.channel, r.dist, r.dev);
    tx = transmission_phase(s.radio, r.resid, p.tx_power_w, r.gain, r.gap);
  } else {
    r.gain = -std::numeric_limits<double>::infinity();
    const double inf = std::numeric_limits<double>::infinity();
    tx = r.resid == 0.0 ? TransmissionPhase{0.0, 0.0, 0.0} : TransmissionPhase{0.0, inf, inf};
  }
  r.rate = tx.rate_bps;
  r.t_tx = tx.duration_s;
  r.t_total = p.t_pre_s + p.t_wf_s + p.t_fly_s + r.t_tx;
  r.e_comp = computation_energy_j(s.compute, p.t_pre_s + p.t_wf_s);
  r.e_fly = fly_w * p.t_fly_s;
  r.e_tx = tx.energy_j;
  r.e_hover = hov * (p.t_pre_s + p.t_wf_s + r.t_tx);
  r.e_total = r.e_comp + r.e_fly + r.e_tx + r.e_hover;
  r.feasible = std::isfinite(r.t_total) && r.t_total <= s.delay_constraint_s + kFeasibilityTolS;
  return r;
}

void require_matches(const Scenario& s, const Plan& p) {
  const PlanEvaluation ev = evaluate_plan(s, p);
  const Recomposed r = recompose(s, p);
  REQUIRE(ev.t_tx_s == r.t_tx);
  REQUIRE(ev.t_total_s == r.t_total);
  REQUIRE(ev.e_comp_j == r.e_comp);
  REQUIRE(ev.e_fly_j == r.e_fly);
  REQUIRE(ev.e_tx_j == r.e_tx);
  REQUIRE(ev.e_hover_j == r.e_hover);
  REQUIRE(ev.e_total_j == r.e_total);
  REQUIRE(ev.residual_bits == r.resid);
  REQUIRE(ev.gap == r.gap);
  REQUIRE(ev.rate_bps == r.rate);
  REQUIRE(ev.final_distance_m == r.dist);
  REQUIRE(ev.deviation_deg == r.dev);
  REQUIRE(ev.gain_db == r.gain);
  REQUIRE(ev.feasible == r.feasible);
  // the headline sum decomposes exactly
  REQUIRE(ev.e_total_j == ev.e_comp_j + ev.e_fly_j + ev.e_tx_j + ev.e_hover_j);
}

}  // namespace

TEST_CASE("evaluate_plan equals module-by-module recomposition") {
  Scenario s;
  require_matches(s, Plan{1.0, 1.0, 10.0, std::numbers::pi / 3.0, 5.0});
  require_matches(s, Plan{0.75, 0.25, 2.5, -0.3, 1.2});
  require_matches(s, Plan{0.0, 0.0, 0.0, 0.0, 5.0});
  require_matches(s, Plan{0.0, 0.0, 3.0, 0.5, 0.0});  // dead link, infinite t_tx

  Scenario small = s;
  small.packet_bits = 1e6;
  small.compute.max_elimination_fraction = 1.0;  // preprocessing can absorb everything
  require_matches(small, Plan{0.25, 0.0, 1.0, 0.1, 2.0});

  Scenario moved = s;
  moved.geometry.receiver = {-200.0, 340.0};
  moved.radio.max_tx_power_w = 8.0;
  require_matches(moved, Plan{2.0, 0.5, 4.5, 1.2, 7.5});
}

TEST_CASE("nothing to send is free and feasible") {
  Scenario s;
  s.packet_bits = 0.0;
  const PlanEvaluation ev = evaluate_plan(s, Plan{0.0, 0.0, 0.0, 0.0, 0.0});
  REQUIRE(ev.e_total_j == 0.0);
  REQUIRE(ev.t_total_s == 0.0);
  REQUIRE(ev.feasible);

  const auto [plan, best] = optimize_cps(s);
  REQUIRE(best.e_total_j == 0.0);
  REQUIRE(plan.t_pre_s == 0.0);
  REQUIRE(plan.t_wf_s == 0.0);
  REQUIRE(plan.t_fly_s == 0.0);
}

TEST_CASE("zero-compute plan carries the whole packet at the initial gap") {
  Scenario s;
  const PlanEvaluation ev = evaluate_plan(s, Plan{0.0, 0.0, 0.0, 0.0, 5.0});
  REQUIRE(ev.residual_bits == s.packet_bits);
  REQUIRE(ev.gap == s.compute.initial_gap);
}

TEST_CASE("evaluate_plan rejects malformed plans") {
  Scenario s;
  REQUIRE_THROWS_AS(evaluate_plan(s, Plan{-0.1, 0, 0, 0, 1}), std::invalid_argument);
  REQUIRE_THROWS_AS(evaluate_plan(s, Plan{0, 0, -1, 0, 1}), std::invalid_argument);
  REQUIRE_THROWS_AS(evaluate_plan(s, Plan{0, 0, 0, 0, 5.1}), std::invalid_argument);  // above limit
}

TEST_CASE("optimize_heading finds the off-axis sweet spot") {
  Scenario s;
  REQUIRE(optimize_heading(s, 0.0) == 0.0);

  const double h10 = optimize_heading(s, 10.0);
  REQUIRE(std::abs(h10) > 0.0);  // strictly off-axis: deviation buys LoS probability
  REQUIRE(rad_to_deg(std::abs(h10)) == Approx(14.0297079077364).epsilon(1e-6));

  const double vmr = max_range_speed(s.propulsion);
  auto gain_at = [&](double t_fly, double h) {
    const Vec2 pos = final_position(s.geometry, h, vmr, t_fly);
    return channel_power_gain_db(s.channel, s.geometry, pos);
  };

  // beats a 0.1 degree brute-force grid everywhere we care to look
  for (double t_fly : {0.5, 2.0, 10.0, 20.0}) {
    const double h = optimize_heading(s, t_fly);
    double grid_best = -std::numeric_limits<double>::infinity();
    for (int i = -1800; i <= 1800; ++i)
      grid_best = std::max(grid_best, gain_at(t_fly, deg_to_rad(0.1 * i)));
    REQUIRE(gain_at(t_fly, h) >= grid_best - 1e-9);
    // symmetric geometry: ties resolve to the nonnegative side and the
    // mirror heading is exactly as good
    REQUIRE(h >= 0.0);
    REQUIRE(gain_at(t_fly, h) == Approx(gain_at(t_fly, -h)).epsilon(1e-14));
  }
}

TEST_CASE("default-scenario optima") {
  Scenario s;
  const auto [pc, ec] = optimize_cps(s);
  REQUIRE(pc.t_pre_s == 0.75);  // exactly the elimination cap for 50 Mbit
  REQUIRE(pc.t_wf_s == 0.0);
  REQUIRE(pc.t_fly_s == 0.0);
  REQUIRE(pc.tx_power_w == s.radio.max_tx_power_w);
  REQUIRE(ec.e_total_j == Approx(487.562530050929).epsilon(1e-9));
  REQUIRE(ec.t_total_s == Approx(2.83159809395282).epsilon(1e-9));
  REQUIRE(ec.feasible);

  const auto [pj, ej] = optimize_jpcc(s);
  REQUIRE(pj.t_pre_s == 0.0);
  REQUIRE(pj.t_wf_s == 0.0);
  REQUIRE(ej.e_total_j == Approx(722.248760101858).epsilon(1e-9));
  REQUIRE(ej.t_total_s == Approx(4.16319618790563).epsilon(1e-9));

  // compute buys a third of the energy here
  REQUIRE(ec.e_total_j < ej.e_total_j);
}

TEST_CASE("winner re-evaluated through the public entry point is identical") {
  Scenario s;
  s.packet_bits = 1.1e8;
  const auto [plan, ev] = optimize_cps(s);
  const PlanEvaluation again = evaluate_plan(s, plan);
  REQUIRE(again.e_total_j == ev.e_total_j);
  REQUIRE(again.t_total_s == ev.t_total_s);
  REQUIRE(again.e_hover_j == ev.e_hover_j);
  REQUIRE(again.feasible == ev.feasible);
}

TEST_CASE("optimizers respect the constraint and the grids") {
  for (double bits : {3e7, 1.5e8}) {
    Scenario s;
    s.packet_bits = bits;
    for (bool with_compute : {true, false}) {
      const auto [plan, ev] = with_compute ? optimize_cps(s) : optimize_jpcc(s);
      REQUIRE(ev.feasible);
      REQUIRE(ev.t_total_s <= s.delay_constraint_s + 1e-9);
      REQUIRE(plan.t_pre_s >= 0.0);
      REQUIRE(plan.t_pre_s <= 5.0);
      REQUIRE(std::fmod(plan.t_pre_s, 0.25) == 0.0);
      REQUIRE(std::fmod(plan.t_wf_s, 0.25) == 0.0);
      REQUIRE(std::fmod(plan.t_fly_s, 0.5) == 0.0);
      REQUIRE(plan.t_fly_s <= std::min(20.0, s.delay_constraint_s));
      REQUIRE(plan.tx_power_w > 0.0);
      REQUIRE(plan.tx_power_w <= s.radio.max_tx_power_w);
      REQUIRE(std::abs(plan.heading_rad) <= std::numbers::pi + deg_to_rad(1.0) + 1e-12);
    }
  }
}

TEST_CASE("transmit power below the limit when the radio is oversized") {
  Scenario s;
  s.radio.max_tx_power_w = 50.0;  // blasting at full power wastes energy here
  const auto [plan, ev] = optimize_jpcc(s);
  REQUIRE(plan.tx_power_w < s.radio.max_tx_power_w);
  Plan full = plan;
  full.tx_power_w = s.radio.max_tx_power_w;
  REQUIRE(ev.e_total_j < evaluate_plan(s, full).e_total_j);
}

TEST_CASE("computation with nothing to offer collapses CPS onto JP-CC") {
  Scenario s;
  s.compute.max_elimination_fraction = 0.0;
  s.compute.initial_gap = 1.0;
  const auto [pc, ec] = optimize_cps(s);
  const auto [pj, ej] = optimize_jpcc(s);
  REQUIRE(pc.t_pre_s == 0.0);
  REQUIRE(pc.t_wf_s == 0.0);
  REQUIRE(pc.t_fly_s == pj.t_fly_s);
  REQUIRE(pc.heading_rad == pj.heading_rad);
  REQUIRE(pc.tx_power_w == pj.tx_power_w);
  REQUIRE(ec.e_total_j == ej.e_total_j);
}

TEST_CASE("optimizers are deterministic") {
  Scenario s;
  s.packet_bits = 8.5e7;
  const auto a = optimize_cps(s);
  const auto b = optimize_cps(s);
  REQUIRE(a.first.t_pre_s == b.first.t_pre_s);
  REQUIRE(a.first.t_wf_s == b.first.t_wf_s);
  REQUIRE(a.first.t_fly_s == b.first.t_fly_s);
  REQUIRE(a.first.heading_rad == b.first.heading_rad);
  REQUIRE(a.first.tx_power_w == b.first.tx_power_w);
  REQUIRE(a.second.e_total_j == b.second.e_total_j);
  REQUIRE(a.second.t_total_s == b.second.t_total_s);
}

TEST_CASE("infeasible scenarios raise with the least-violating plan attached") {
  Scenario s;
  s.delay_constraint_s = 0.05;  // nothing fits in 50 ms
  REQUIRE_THROWS_AS(optimize_cps(s), InfeasibleScenario);
  try {
    optimize_cps(s);
  } catch (const InfeasibleScenario& e) {
    REQUIRE_FALSE(e.least_violating_eval.feasible);
    REQUIRE(e.least_violating_eval.t_total_s > s.delay_constraint_s);
    REQUIRE(std::string(e.what()).find("delay constraint") != std::string::npos);
  }
}

TEST_CASE("preprocessing can rescue a packet the baseline cannot ship") {
  Scenario s;
  s.packet_bits = 4e8;
  REQUIRE_THROWS_AS(optimize_jpcc(s), InfeasibleScenario);
  const auto [plan, ev] = optimize_cps(s);
  REQUIRE(ev.feasible);
  REQUIRE(plan.t_pre_s > 0.0);
}
