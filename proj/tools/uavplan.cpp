// Command-line front end: plan a single scenario, sweep packet sizes,
// tabulate DCF saturation throughput, or classify a recorded link trace.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavplan/config.hpp"
#include "uavplan/harness.hpp"
#include "uavplan/planner.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out_path, "write output to this file instead of stdout");
  cmd->add_option("--set", o.overrides, "override a config key, e.g. --set radio.max_tx_power_w=2");
}

nlohmann::json load_config(const CommonOpts& o) {
  nlohmann::json j =
      o.config_path.empty() ? nlohmann::json::object() : uavplan::load_json_file(o.config_path);
  for (const std::string& s : o.overrides) uavplan::apply_override(j, s);
  return j;
}

// returns the stream to write results to, keeping the file handle alive
std::ostream& open_out(const CommonOpts& o, std::ofstream& file) {
  if (o.out_path.empty()) return std::cout;
  file.open(o.out_path);
  if (!file) throw std::runtime_error("cannot open output file: " + o.out_path);
  return file;
}

int run_plan(const CommonOpts& opts) {
  const uavplan::Scenario s = uavplan::scenario_from_json(load_config(opts));
  std::ofstream file;
  std::ostream& os = open_out(opts, file);
  bool all_feasible = true;
  for (bool with_compute : {true, false}) {
    const char* method = with_compute ? "CPS" : "JP-CC";
    try {
      const auto [plan, ev] = with_compute ? uavplan::optimize_cps(s) : uavplan::optimize_jpcc(s);
      uavplan::write_plan_report(method, plan, ev, os);
    } catch (const uavplan::InfeasibleScenario& e) {
      all_feasible = false;
      os << method << ": infeasible (" << e.what() << ")\n";
      uavplan::write_plan_report(method, e.least_violating_plan, e.least_violating_eval, os);
    }
  }
  return all_feasible ? 0 : 2;
}

int run_sweep_cmd(const CommonOpts& opts) {
  const nlohmann::json j = load_config(opts);
  const uavplan::Scenario base = uavplan::scenario_from_json(j);
  const uavplan::SweepSpec spec = uavplan::sweep_from_json(j);
  const uavplan::SweepResult result = uavplan::run_sweep(base, spec);
  std::ofstream file;
  uavplan::write_sweep_csv(result, open_out(opts, file));
  // summary goes to stderr so a redirected CSV stays clean
  uavplan::write_sweep_summary(result, std::cerr);
  return 0;
}

int run_dcf_cmd(const CommonOpts& opts, std::optional<std::uint64_t> seed) {
  const nlohmann::json j = load_config(opts);
  uavplan::DcfSweepSpec spec = uavplan::dcf_spec_from_json(j);
  spec.mc_seed = seed;
  const uavplan::DcfResult result = uavplan::run_dcf(spec);
  std::ofstream file;
  uavplan::write_dcf_csv(result, open_out(opts, file));
  for (const auto& [n, pk] : result.peaks)
    std::cerr << "n=" << n << ": peak throughput " << uavplan::fmt_g(pk.throughput) << " at tau "
              << uavplan::fmt_g(pk.tau) << "\n";
  return 0;
}

int run_orient_cmd(const CommonOpts& opts, const std::string& trace_path) {
  const nlohmann::json j = load_config(opts);
  const uavplan::OrientThresholds th = uavplan::thresholds_from_json(j);
  const auto trace = uavplan::trace_from_json(uavplan::load_json_file(trace_path));
  const uavplan::OrientReport rep = uavplan::run_orient(trace, th);
  std::ofstream file;
  uavplan::write_orient_report(rep, open_out(opts, file));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy planning for compute-fly-transmit UAV missions"};
  app.require_subcommand(1);

  CommonOpts plan_opts;
  CLI::App* plan = app.add_subcommand("plan", "optimize one scenario with both planners");
  add_common(plan, plan_opts);

  CommonOpts sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "packet-size sweep, CSV to --out or stdout");
  add_common(sweep, sweep_opts);

  CommonOpts dcf_opts;
  std::optional<std::uint64_t> dcf_seed;
  CLI::App* dcf = app.add_subcommand("dcf", "DCF saturation throughput curves");
  add_common(dcf, dcf_opts);
  dcf->add_option("--seed", dcf_seed,
                  "also run the slot-level Monte Carlo with this seed (fills mc_throughput)");

  CommonOpts orient_opts;
  std::string trace_path;
  CLI::App* orient = app.add_subcommand("orient", "classify link-trouble causes in a trace");
  add_common(orient, orient_opts);
  orient->add_option("trace", trace_path, "JSON trace of link observations")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return run_plan(plan_opts);
    if (sweep->parsed()) return run_sweep_cmd(sweep_opts);
    if (dcf->parsed()) return run_dcf_cmd(dcf_opts, dcf_seed);
    if (orient->parsed()) return run_orient_cmd(orient_opts, trace_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
