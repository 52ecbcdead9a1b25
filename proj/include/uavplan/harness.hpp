#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "uavplan/dcf.hpp"
#include "uavplan/orient.hpp"
#include "uavplan/planner.hpp"

namespace uavplan {

// shortest round-trippable-ish formatting that still diffs byte-identically
// between runs; CSV consumers get 12 significant digits
inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// packet-size sweep comparing the two planners

struct SweepSpec {
  std::vector<double> packet_bits_grid;

  static SweepSpec default_grid() {
    SweepSpec s;
    for (int i = 0; i < 10; ++i) s.packet_bits_grid.push_back(2e7 + i * 2e7);
    return s;
  }
};

struct SweepRow {
  std::string method;
  double packet_bits = 0.0;
  Plan plan;
  PlanEvaluation eval;
};

struct SweepSummary {
  int pairs_compared = 0;  // packet sizes where both planners were feasible
  double mean_energy_reduction_pct = 0.0;
  double mean_delay_reduction_pct = 0.0;
  // same comparison with transmit power pinned to the radio maximum
  int pairs_compared_pinned = 0;
  double mean_energy_reduction_pct_pinned = 0.0;
  double mean_delay_reduction_pct_pinned = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

namespace detail {

inline SweepRow run_case(const Scenario& s, bool with_compute, const PlannerOptions& opt,
                         const char* method, double packet_bits) {
  SweepRow row;
  row.method = method;
  row.packet_bits = packet_bits;
  try {
    auto [plan, ev] = with_compute ? optimize_cps(s, opt) : optimize_jpcc(s, opt);
    row.plan = plan;
    row.eval = ev;
  } catch (const InfeasibleScenario& e) {
    row.plan = e.least_violating_plan;
    row.eval = e.least_violating_eval;  // feasible stays false
  }
  return row;
}

}  // namespace detail

inline SweepResult run_sweep(const Scenario& base, const SweepSpec& spec) {
  SweepResult out;
  double sum_de = 0.0, sum_dt = 0.0, sum_de_pin = 0.0, sum_dt_pin = 0.0;
  for (double bits : spec.packet_bits_grid) {
    Scenario s = base;
    s.packet_bits = bits;
    SweepRow cps = detail::run_case(s, true, {}, "CPS", bits);
    SweepRow jpcc = detail::run_case(s, false, {}, "JP-CC", bits);
    if (cps.eval.feasible && jpcc.eval.feasible) {
      ++out.summary.pairs_compared;
      sum_de += 100.0 * (jpcc.eval.e_total_j - cps.eval.e_total_j) / jpcc.eval.e_total_j;
      sum_dt += 100.0 * (jpcc.eval.t_total_s - cps.eval.t_total_s) / jpcc.eval.t_total_s;
    }
    out.rows.push_back(std::move(cps));
    out.rows.push_back(std::move(jpcc));

    PlannerOptions pinned;
    pinned.pin_power_to_max = true;
    SweepRow cps_pin = detail::run_case(s, true, pinned, "CPS", bits);
    SweepRow jpcc_pin = detail::run_case(s, false, pinned, "JP-CC", bits);
    if (cps_pin.eval.feasible && jpcc_pin.eval.feasible) {
      ++out.summary.pairs_compared_pinned;
      sum_de_pin += 100.0 * (jpcc_pin.eval.e_total_j - cps_pin.eval.e_total_j) / jpcc_pin.eval.e_total_j;
      sum_dt_pin += 100.0 * (jpcc_pin.eval.t_total_s - cps_pin.eval.t_total_s) / jpcc_pin.eval.t_total_s;
    }
  }
  if (out.summary.pairs_compared > 0) {
    out.summary.mean_energy_reduction_pct = sum_de / out.summary.pairs_compared;
    out.summary.mean_delay_reduction_pct = sum_dt / out.summary.pairs_compared;
  }
  if (out.summary.pairs_compared_pinned > 0) {
    out.summary.mean_energy_reduction_pct_pinned = sum_de_pin / out.summary.pairs_compared_pinned;
    out.summary.mean_delay_reduction_pct_pinned = sum_dt_pin / out.summary.pairs_compared_pinned;
  }
  return out;
}

inline void write_sweep_csv(const SweepResult& r, std::ostream& os) {
  os << "method,packet_bits,t_pre,t_wf,t_fly,t_tx,t_total,"
        "e_comp,e_fly,e_tx,e_hover,e_total,heading_deg,tx_power_W,final_distance_m,feasible\n";
  for (const SweepRow& row : r.rows) {
    const PlanEvaluation& e = row.eval;
    os << row.method << ',' << fmt_g(row.packet_bits) << ',' << fmt_g(e.t_pre_s) << ','
       << fmt_g(e.t_wf_s) << ',' << fmt_g(e.t_fly_s) << ',' << fmt_g(e.t_tx_s) << ','
       << fmt_g(e.t_total_s) << ',' << fmt_g(e.e_comp_j) << ',' << fmt_g(e.e_fly_j) << ','
       << fmt_g(e.e_tx_j) << ',' << fmt_g(e.e_hover_j) << ',' << fmt_g(e.e_total_j) << ','
       << fmt_g(rad_to_deg(row.plan.heading_rad)) << ',' << fmt_g(row.plan.tx_power_w) << ','
       << fmt_g(e.final_distance_m) << ',' << (e.feasible ? '1' : '0') << '\n';
  }
}

inline void write_sweep_summary(const SweepResult& r, std::ostream& os) {
  const SweepSummary& s = r.summary;
  os << "packet sizes with both planners feasible: " << s.pairs_compared << "\n";
  os << "mean energy reduction, CPS vs JP-CC: " << fmt_g(s.mean_energy_reduction_pct) << " %\n";
  os << "mean delay reduction,  CPS vs JP-CC: " << fmt_g(s.mean_delay_reduction_pct) << " %\n";
  os << "with transmit power pinned to the maximum (" << s.pairs_compared_pinned << " pairs):\n";
  os << "mean energy reduction, CPS vs JP-CC: " << fmt_g(s.mean_energy_reduction_pct_pinned)
     << " %\n";
  os << "mean delay reduction,  CPS vs JP-CC: " << fmt_g(s.mean_delay_reduction_pct_pinned)
     << " %\n";
}

// ---------------------------------------------------------------------------
// single-scenario plan report

inline void write_plan_report(const char* method, const Plan& plan, const PlanEvaluation& e,
                              std::ostream& os) {
  os << method << " plan: t_pre=" << fmt_g(e.t_pre_s) << " s, t_wf=" << fmt_g(e.t_wf_s)
     << " s, t_fly=" << fmt_g(e.t_fly_s) << " s, heading=" << fmt_g(rad_to_deg(plan.heading_rad))
     << " deg, tx_power=" << fmt_g(plan.tx_power_w) << " W\n"
     << "  t_tx=" << fmt_g(e.t_tx_s) << " s, t_total=" << fmt_g(e.t_total_s)
     << " s, rate=" << fmt_g(e.rate_bps) << " bit/s, final_distance=" << fmt_g(e.final_distance_m)
     << " m\n"
     << "  e_comp=" << fmt_g(e.e_comp_j) << " J, e_fly=" << fmt_g(e.e_fly_j)
     << " J, e_tx=" << fmt_g(e.e_tx_j) << " J, e_hover=" << fmt_g(e.e_hover_j)
     << " J, e_total=" << fmt_g(e.e_total_j) << " J\n"
     << "  feasible: " << (e.feasible ? "yes" : "no") << "\n";
}

// ---------------------------------------------------------------------------
// DCF throughput curves

struct DcfSweepSpec {
  DcfParams params;
  std::vector<int> n_stations{5, 10, 50};
  int tau_points = 50;
  double tau_min = 1e-3;
  double tau_max = 0.5;
  // when set, each grid point also gets a slot-level Monte Carlo estimate
  std::optional<std::uint64_t> mc_seed;
  std::uint64_t mc_slots = 1000000;
};

struct DcfRow {
  int n_stations = 0;
  double tau = 0.0;
  double throughput = 0.0;
  std::optional<double> mc_throughput;
  bool is_peak = false;
};

struct DcfResult {
  std::vector<DcfRow> rows;
  std::vector<std::pair<int, DcfPeak>> peaks;
};

inline DcfResult run_dcf(const DcfSweepSpec& spec) {
  spec.params.validate();
  if (spec.tau_points < 2 || spec.tau_min <= 0 || spec.tau_max <= spec.tau_min ||
      spec.tau_max > 1.0)
    throw std::invalid_argument("dcf sweep: bad tau grid");
  DcfResult out;
  const double lmin = std::log(spec.tau_min);
  const double lmax = std::log(spec.tau_max);
  for (int n : spec.n_stations) {
    for (int i = 0; i < spec.tau_points; ++i) {
      DcfRow row;
      row.n_stations = n;
      row.tau = std::exp(lmin + (lmax - lmin) * i / (spec.tau_points - 1));
      row.throughput = saturation_throughput(spec.params, n, row.tau);
      if (spec.mc_seed)
        row.mc_throughput = simulated_throughput(
            spec.params, n, row.tau, spec.mc_slots,
            *spec.mc_seed + 1000003ull * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i));
      out.rows.push_back(row);
    }
    const DcfPeak pk = peak_throughput(spec.params, n);
    DcfRow prow;
    prow.n_stations = n;
    prow.tau = pk.tau;
    prow.throughput = pk.throughput;
    prow.is_peak = true;
    out.rows.push_back(prow);
    out.peaks.emplace_back(n, pk);
  }
  return out;
}

inline void write_dcf_csv(const DcfResult& r, std::ostream& os) {
  os << "n_stations,tau,throughput,mc_throughput,is_peak\n";
  for (const DcfRow& row : r.rows) {
    os << row.n_stations << ',' << fmt_g(row.tau) << ',' << fmt_g(row.throughput) << ',';
    if (row.mc_throughput) os << fmt_g(*row.mc_throughput);
    os << ',' << (row.is_peak ? '1' : '0') << '\n';
  }
}

// ---------------------------------------------------------------------------
// orientation over a recorded trace

struct OrientTraceEntry {
  LinkObservation observation;
  std::optional<Cause> label;
};

struct OrientRecordResult {
  std::size_t index = 0;
  Orientation result;
  std::optional<Cause> label;
};

struct OrientReport {
  std::vector<OrientRecordResult> records;
  int labeled = 0;
  int matched = 0;
};

inline OrientReport run_orient(const std::vector<OrientTraceEntry>& trace,
                               const OrientThresholds& th = {}) {
  OrientReport rep;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    OrientRecordResult rec;
    rec.index = i;
    rec.result = orient(trace[i].observation, th);
    rec.label = trace[i].label;
    if (rec.label) {
      ++rep.labeled;
      if (*rec.label == rec.result.cause) ++rep.matched;
    }
    rep.records.push_back(rec);
  }
  return rep;
}

inline void write_orient_report(const OrientReport& rep, std::ostream& os) {
  for (const OrientRecordResult& r : rep.records) {
    os << "record " << r.index << ": cause=" << to_string(r.result.cause)
       << " dimension=" << to_string(r.result.issue_dimension);
    if (r.label) os << " label=" << to_string(*r.label) << (*r.label == r.result.cause ? "" : " MISMATCH");
    os << "\n";
  }
  os << "records: " << rep.records.size() << "\n";
  if (rep.labeled > 0)
    os << "labeled: " << rep.labeled << ", matched: " << rep.matched << " ("
       << fmt_g(100.0 * rep.matched / rep.labeled) << " %)\n";
}

}  // namespace uavplan
