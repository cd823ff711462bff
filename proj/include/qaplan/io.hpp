#pragma once

// File formats: YAML topologies and scenarios (field names carry their units),
// and deterministic CSV/JSON result emission.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qaplan/network.hpp"
#include "qaplan/physmodels.hpp"
#include "qaplan/planner.hpp"
#include "qaplan/spectrum.hpp"

namespace qaplan {

// ---- topology ---------------------------------------------------------------

/// Parses a topology document:
///
///   nodes:
///     - {id: 1, name: Madrid}
///   links:
///     - {a: Madrid, b: Zaragoza, length_km: 272}
///
/// Syntax errors and semantic errors (missing or empty sections, duplicate
/// nodes or links, unknown link endpoints) raise ParseError with position.
TopologySpec parse_topology(std::string_view text);
std::string serialize_topology(const TopologySpec& spec);
TopologySpec load_topology(const std::filesystem::path& path);

/// Text of the built-in reference mesh, referenced as "builtin:spain7".
std::string_view default_topology_text();
inline constexpr std::string_view kBuiltinTopology = "builtin:spain7";

// ---- scenario ---------------------------------------------------------------

struct PlacementSettings {
  double length_km = 0.0;  // 0 selects the longest scaled link
  double p_per_channel_dbm = 0.0;
};

struct Scenario {
  std::string name;
  /// "builtin:spain7", a path relative to the scenario file, or empty when
  /// the topology is written inline.
  std::string topology_ref;
  TopologySpec topology;
  double lambda_scale = 0.05;
  ScaleRange lambda_range;
  std::string raman_table;  // path relative to the scenario file
  double alpha_db_per_km = 0.2;
  WdmGrid grid;
  BandWindow window;
  CvQkdParams cvqkd;
  PlannerConfig planner;
  double qkd_total_bps = 0.0;
  std::string qkd_pattern = "uniform_all_pairs";
  std::vector<int> offered_load;
  std::uint64_t seed = 1;
  PlacementSettings placement;

  /// Directory against which relative paths resolve; not serialized.
  std::filesystem::path base_dir;
};

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& scenario);

/// A scenario with every reference loaded and every invariant checked.
struct ResolvedScenario {
  Topology topology;
  PhysicalLayer phys;
  std::vector<QkdDemand> qkd;
};

ResolvedScenario resolve(const Scenario& scenario);

// ---- results ----------------------------------------------------------------

enum class ResultFormat { kCsv, kJson };

ResultFormat result_format_from_string(std::string_view s);

inline constexpr int kResultSchemaVersion = 1;

/// CSV columns: policy,margin,p_dbm,offered,blocked,blocking_ratio with six
/// fixed decimals. JSON adds feasibility, quantum slot, request hash, and
/// per-link detail. Throws InvalidInput on an empty report list.
std::string emit_results(const std::vector<PlanReport>& reports, ResultFormat format);
std::vector<PlanReport> reports_from_json(std::string_view text);

std::string emit_placement(const PlacementSweep& sweep, ResultFormat format);

/// Writes `content` to `path`, or to stdout when path is empty or "-".
void write_output(const std::filesystem::path& path, std::string_view content);

}  // namespace qaplan
