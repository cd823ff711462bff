#include <yaml-cpp/yaml.h>

#include <cmath>

#include "qaplan/errors.hpp"
#include "qaplan/io.hpp"
#include "yaml_util.hpp"

namespace qaplan {

using detail::check_keys;
using detail::optional;
using detail::require;
using detail::yaml_error;

namespace {

template <typename F>
void validated(const YAML::Node& at, F&& check) {
  try {
    check();
  } catch (const InvalidInput& e) {
    throw yaml_error(e.what(), at);
  } catch (const InvalidTopology& e) {
    throw yaml_error(e.what(), at);
  }
}

YAML::Node section(const YAML::Node& root, const char* key, std::initializer_list<std::string_view> allowed) {
  YAML::Node node = root[key];
  if (node) check_keys(node, allowed, std::string("section '") + key + "'");
  return node;
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  const YAML::Node root = detail::load_yaml(text);
  if (!root || !root.IsMap()) throw ParseError("scenario must be a YAML mapping");
  check_keys(root,
             {"name", "topology", "lambda_scale", "lambda_range", "raman_table", "fiber", "grid",
              "cvqkd", "planner", "qkd_demand", "offered_load", "seed", "placement"},
             "scenario");

  Scenario s;
  s.base_dir = base_dir;
  s.name = require<std::string>(root, "name");

  const YAML::Node topo = root["topology"];
  if (!topo || (topo.IsScalar() && topo.as<std::string>() == kBuiltinTopology)) {
    s.topology_ref = std::string(kBuiltinTopology);
    s.topology = parse_topology(default_topology_text());
  } else if (topo.IsScalar()) {
    s.topology_ref = topo.as<std::string>();
    const auto path = base_dir / s.topology_ref;
    if (!std::filesystem::exists(path)) {
      throw yaml_error("topology file not found: " + path.string(), topo);
    }
    s.topology = load_topology(path);
  } else {
    s.topology = detail::topology_from_node(topo);
  }

  s.lambda_scale = optional<double>(root, "lambda_scale", s.lambda_scale);
  if (const auto r = section(root, "lambda_range", {"min", "max"})) {
    s.lambda_range.min = optional<double>(r, "min", s.lambda_range.min);
    s.lambda_range.max = optional<double>(r, "max", s.lambda_range.max);
  }
  validated(root, [&] {
    if (!(s.lambda_range.min > 0.0 && s.lambda_range.min <= s.lambda_range.max)) {
      throw InvalidInput("lambda_range must satisfy 0 < min <= max");
    }
    build_topology(s.topology, s.lambda_scale, s.lambda_range);
  });

  s.raman_table = require<std::string>(root, "raman_table");
  if (!std::filesystem::exists(base_dir / s.raman_table)) {
    throw yaml_error("raman table not found: " + (base_dir / s.raman_table).string(),
                     root["raman_table"]);
  }

  if (const auto f = section(root, "fiber", {"alpha_db_per_km"})) {
    s.alpha_db_per_km = optional<double>(f, "alpha_db_per_km", s.alpha_db_per_km);
    validated(f, [&] {
      if (!(s.alpha_db_per_km > 0.0)) throw InvalidInput("alpha_db_per_km must be > 0");
    });
  }

  if (const auto g = section(root, "grid",
                             {"f_start_thz", "spacing_ghz", "n_slots", "band_min_thz",
                              "band_max_thz"})) {
    s.grid.f_start_thz = optional<double>(g, "f_start_thz", s.grid.f_start_thz);
    s.grid.spacing_ghz = optional<double>(g, "spacing_ghz", s.grid.spacing_ghz);
    s.grid.n_slots = optional<int>(g, "n_slots", s.grid.n_slots);
    s.window.min_thz = optional<double>(g, "band_min_thz", s.window.min_thz);
    s.window.max_thz = optional<double>(g, "band_max_thz", s.window.max_thz);
  }
  validated(root["grid"] ? root["grid"] : root, [&] { s.grid.validate(s.window); });

  if (const auto c = section(root, "cvqkd",
                             {"v_a_snu", "beta", "xi_base_snu", "eta_det", "v_el_snu",
                              "detection", "f_sym_hz", "b_q_ghz"})) {
    s.cvqkd.v_a = optional<double>(c, "v_a_snu", s.cvqkd.v_a);
    s.cvqkd.beta = optional<double>(c, "beta", s.cvqkd.beta);
    s.cvqkd.xi_base = optional<double>(c, "xi_base_snu", s.cvqkd.xi_base);
    s.cvqkd.eta_det = optional<double>(c, "eta_det", s.cvqkd.eta_det);
    s.cvqkd.v_el = optional<double>(c, "v_el_snu", s.cvqkd.v_el);
    s.cvqkd.f_sym = optional<double>(c, "f_sym_hz", s.cvqkd.f_sym);
    s.cvqkd.b_q_ghz = optional<double>(c, "b_q_ghz", s.cvqkd.b_q_ghz);
    validated(c, [&] {
      s.cvqkd.detection = detection_from_string(
          optional<std::string>(c, "detection", std::string(to_string(s.cvqkd.detection))));
      s.cvqkd.validate();
    });
  }

  if (const auto p = section(root, "planner",
                             {"policy", "margin", "p_classical_dbm", "k_paths", "q_placement"})) {
    s.planner.margin = optional<double>(p, "margin", s.planner.margin);
    s.planner.p_classical_dbm = optional<double>(p, "p_classical_dbm", s.planner.p_classical_dbm);
    s.planner.k_paths = optional<int>(p, "k_paths", s.planner.k_paths);
    validated(p, [&] {
      s.planner.policy = wavelength_policy_from_string(
          optional<std::string>(p, "policy", std::string(to_string(s.planner.policy))));
      s.planner.validate();
    });
    if (const auto q = p["q_placement"]) {
      const std::string v = detail::convert<std::string>(q, "q_placement");
      if (v == "sweep") {
        s.planner.q_placement = {QPlacement::Kind::kSweepOptimal, 0};
      } else {
        s.planner.q_placement = {QPlacement::Kind::kFixed, detail::convert<int>(q, "q_placement")};
        if (!s.grid.contains(s.planner.q_placement.slot)) {
          throw yaml_error("q_placement slot outside grid", q);
        }
      }
    }
  }

  if (const auto q = section(root, "qkd_demand", {"total_bps", "pattern"})) {
    s.qkd_total_bps = optional<double>(q, "total_bps", s.qkd_total_bps);
    s.qkd_pattern = optional<std::string>(q, "pattern", s.qkd_pattern);
    if (!(s.qkd_total_bps >= 0.0) || !std::isfinite(s.qkd_total_bps)) {
      throw yaml_error("total_bps must be >= 0", q);
    }
    if (s.qkd_pattern != "uniform_all_pairs") {
      throw yaml_error("unknown qkd pattern '" + s.qkd_pattern + "'", q["pattern"]);
    }
  }

  if (const auto o = root["offered_load"]) {
    if (!o.IsSequence()) throw yaml_error("offered_load must be a list of request counts", o);
    for (const auto& v : o) {
      const int n = detail::convert<int>(v, "offered_load");
      if (n < 0) throw yaml_error("offered_load entries must be >= 0", v);
      s.offered_load.push_back(n);
    }
  }
  s.seed = optional<std::uint64_t>(root, "seed", s.seed);

  s.placement.p_per_channel_dbm = s.planner.p_classical_dbm;
  if (const auto pl = section(root, "placement", {"length_km", "p_per_channel_dbm"})) {
    s.placement.length_km = optional<double>(pl, "length_km", s.placement.length_km);
    s.placement.p_per_channel_dbm =
        optional<double>(pl, "p_per_channel_dbm", s.placement.p_per_channel_dbm);
    if (!(s.placement.length_km >= 0.0)) throw yaml_error("length_km must be >= 0", pl);
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  try {
    return parse_scenario(text, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_scenario(const Scenario& s) {
  YAML::Emitter out;
  out.SetDoublePrecision(15);
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "topology" << YAML::Value;
  if (!s.topology_ref.empty()) {
    out << s.topology_ref;
  } else {
    detail::emit_topology(out, s.topology);
  }
  out << YAML::Key << "lambda_scale" << YAML::Value << s.lambda_scale;
  out << YAML::Key << "lambda_range" << YAML::Value << YAML::Flow << YAML::BeginMap
      << YAML::Key << "min" << YAML::Value << s.lambda_range.min << YAML::Key << "max"
      << YAML::Value << s.lambda_range.max << YAML::EndMap;
  out << YAML::Key << "raman_table" << YAML::Value << s.raman_table;
  out << YAML::Key << "fiber" << YAML::Value << YAML::BeginMap << YAML::Key << "alpha_db_per_km"
      << YAML::Value << s.alpha_db_per_km << YAML::EndMap;

  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "f_start_thz" << YAML::Value << s.grid.f_start_thz;
  out << YAML::Key << "spacing_ghz" << YAML::Value << s.grid.spacing_ghz;
  out << YAML::Key << "n_slots" << YAML::Value << s.grid.n_slots;
  out << YAML::Key << "band_min_thz" << YAML::Value << s.window.min_thz;
  out << YAML::Key << "band_max_thz" << YAML::Value << s.window.max_thz;
  out << YAML::EndMap;

  out << YAML::Key << "cvqkd" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "v_a_snu" << YAML::Value << s.cvqkd.v_a;
  out << YAML::Key << "beta" << YAML::Value << s.cvqkd.beta;
  out << YAML::Key << "xi_base_snu" << YAML::Value << s.cvqkd.xi_base;
  out << YAML::Key << "eta_det" << YAML::Value << s.cvqkd.eta_det;
  out << YAML::Key << "v_el_snu" << YAML::Value << s.cvqkd.v_el;
  out << YAML::Key << "detection" << YAML::Value << std::string(to_string(s.cvqkd.detection));
  out << YAML::Key << "f_sym_hz" << YAML::Value << s.cvqkd.f_sym;
  out << YAML::Key << "b_q_ghz" << YAML::Value << s.cvqkd.b_q_ghz;
  out << YAML::EndMap;

  out << YAML::Key << "planner" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "policy" << YAML::Value << std::string(to_string(s.planner.policy));
  out << YAML::Key << "margin" << YAML::Value << s.planner.margin;
  out << YAML::Key << "p_classical_dbm" << YAML::Value << s.planner.p_classical_dbm;
  out << YAML::Key << "k_paths" << YAML::Value << s.planner.k_paths;
  out << YAML::Key << "q_placement" << YAML::Value;
  if (s.planner.q_placement.kind == QPlacement::Kind::kSweepOptimal) {
    out << "sweep";
  } else {
    out << s.planner.q_placement.slot;
  }
  out << YAML::EndMap;

  out << YAML::Key << "qkd_demand" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "total_bps" << YAML::Value << s.qkd_total_bps;
  out << YAML::Key << "pattern" << YAML::Value << s.qkd_pattern;
  out << YAML::EndMap;

  out << YAML::Key << "offered_load" << YAML::Value << YAML::Flow << s.offered_load;
  out << YAML::Key << "seed" << YAML::Value << s.seed;
  out << YAML::Key << "placement" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "length_km" << YAML::Value << s.placement.length_km;
  out << YAML::Key << "p_per_channel_dbm" << YAML::Value << s.placement.p_per_channel_dbm;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

ResolvedScenario resolve(const Scenario& s) {
  ResolvedScenario r{build_topology(s.topology, s.lambda_scale, s.lambda_range), {}, {}};
  r.phys.fiber.alpha_db_per_km = s.alpha_db_per_km;
  r.phys.fiber.raman =
      std::make_shared<const RamanSpectrum>(RamanSpectrum::load(s.base_dir / s.raman_table));
  r.phys.cvqkd = s.cvqkd;
  r.phys.grid = s.grid;
  r.phys.window = s.window;
  r.phys.cvqkd.nu_q_thz = s.grid.slot_freq_thz(0);
  r.phys.validate();
  s.planner.validate();
  r.qkd = uniform_qkd_demands(r.topology, s.qkd_total_bps);
  return r;
}

}  // namespace qaplan
