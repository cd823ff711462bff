#include "qaplan/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <optional>

#include "qaplan/errors.hpp"
#include "qaplan/io.hpp"
#include "qaplan/planner.hpp"

namespace qaplan {

namespace {

struct Options {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
};

void emit(const Options& opt, const std::string& content, std::ostream& out) {
  if (opt.out.empty() || opt.out == "-") {
    out << content;
  } else {
    write_output(opt.out, content);
  }
}

double longest_link_km(const Topology& topo) {
  double best = 0.0;
  for (const auto& l : topo.links()) best = std::max(best, l.length_km);
  return best;
}

int run_command(const std::string& command, const Options& opt, std::ostream& out,
                std::ostream& err) {
  const Scenario scenario = load_scenario(opt.scenario);
  const ResultFormat format = result_format_from_string(opt.format);
  const ResolvedScenario rs = resolve(scenario);
  const std::uint64_t seed = opt.seed.value_or(scenario.seed);

  if (command == "validate") {
    out << "ok: " << scenario.name << " (" << rs.topology.node_count() << " nodes, "
        << rs.topology.link_count() << " links, " << scenario.grid.n_slots << " slots)\n";
    return kExitOk;
  }
  if (command == "sweep-placement") {
    const double length = scenario.placement.length_km > 0.0 ? scenario.placement.length_km
                                                             : longest_link_km(rs.topology);
    const PlacementSweep sweep =
        placement_sweep(rs.phys.grid, rs.phys.fiber, length,
                        scenario.placement.p_per_channel_dbm, rs.phys.cvqkd.b_q_ghz);
    emit(opt, emit_placement(sweep, format), out);
    return kExitOk;
  }

  if (scenario.offered_load.empty()) {
    err << "error: scenario '" << scenario.name << "' has no offered_load levels\n";
    return kExitInputError;
  }
  std::vector<PlanReport> reports;
  if (command == "run") {
    reports = run_scenario(rs.topology, rs.qkd, scenario.offered_load, rs.phys, scenario.planner,
                           seed);
  } else {
    reports = flatten(compare_policies(rs.topology, rs.qkd, scenario.offered_load, rs.phys,
                                       scenario.planner, seed));
  }
  emit(opt, emit_results(reports, format), out);
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-aware planning of CV-QKD and classical WDM traffic", "qaplan"};
  app.require_subcommand(1);
  Options opt;
  const std::pair<const char*, const char*> commands[] = {
      {"sweep-placement", "SpRS at every candidate quantum slot of a fully loaded grid"},
      {"run", "blocking curve for the scenario's planner configuration"},
      {"compare", "five-configuration blocking comparison on shared requests"},
      {"validate", "check scenario, topology and Raman table files"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", opt.scenario, "scenario file")->required();
    sub->add_option("--seed", opt.seed, "override the scenario seed");
    sub->add_option("--out", opt.out, "output file (default: stdout)");
    sub->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInputError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    return run_command(command, opt, out, err);
  } catch (const InfeasibleAllocation& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace qaplan
