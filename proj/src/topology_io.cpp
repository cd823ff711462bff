#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "qaplan/errors.hpp"
#include "qaplan/io.hpp"
#include "yaml_util.hpp"

namespace qaplan {

namespace {

constexpr std::string_view kDefaultTopology = R"(# Reference mesh: 7 cities of mainland Spain, unscaled fiber lengths.
nodes:
  - {id: 1, name: Madrid}
  - {id: 2, name: Zaragoza}
  - {id: 3, name: Barcelona}
  - {id: 4, name: Valencia}
  - {id: 5, name: Murcia}
  - {id: 6, name: Malaga}
  - {id: 7, name: Sevilla}
links:
  - {a: Barcelona, b: Valencia, length_km: 303}
  - {a: Valencia, b: Murcia, length_km: 177}
  - {a: Murcia, b: Malaga, length_km: 323}
  - {a: Malaga, b: Sevilla, length_km: 158}
  - {a: Sevilla, b: Madrid, length_km: 391}
  - {a: Madrid, b: Zaragoza, length_km: 272}
  - {a: Zaragoza, b: Barcelona, length_km: 257}
  - {a: Madrid, b: Valencia, length_km: 302}
)";

}  // namespace

std::string_view default_topology_text() { return kDefaultTopology; }

namespace detail {

TopologySpec topology_from_node(const YAML::Node& root) {
  if (!root.IsMap()) throw yaml_error("topology must be a mapping", root);
  check_keys(root, {"nodes", "links"}, "topology");

  const YAML::Node nodes = root["nodes"];
  if (!nodes) throw yaml_error("missing section 'nodes'", root);
  if (!nodes.IsSequence() || nodes.size() == 0) {
    throw yaml_error("section 'nodes' must be a non-empty list", nodes);
  }
  const YAML::Node links = root["links"];
  if (!links) throw yaml_error("missing section 'links'", root);
  if (!links.IsSequence()) throw yaml_error("section 'links' must be a list", links);

  TopologySpec spec;
  std::set<std::string> names;
  std::set<int> ids;
  for (const auto& n : nodes) {
    check_keys(n, {"id", "name"}, "node");
    NodeSpec ns{require<int>(n, "id"), require<std::string>(n, "name")};
    if (ns.name.empty()) throw yaml_error("node name must not be empty", n["name"]);
    if (!ids.insert(ns.id).second) {
      throw yaml_error("duplicate node id " + std::to_string(ns.id), n["id"]);
    }
    if (!names.insert(ns.name).second) {
      throw yaml_error("duplicate node name '" + ns.name + "'", n["name"]);
    }
    spec.nodes.push_back(std::move(ns));
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& l : links) {
    check_keys(l, {"a", "b", "length_km"}, "link");
    LinkSpec ls{require<std::string>(l, "a"), require<std::string>(l, "b"),
                require<double>(l, "length_km")};
    for (const char* end : {"a", "b"}) {
      const std::string name = l[end].as<std::string>();
      if (!names.count(name)) throw yaml_error("unknown node '" + name + "' in link", l[end]);
    }
    if (ls.a == ls.b) throw yaml_error("self-loop at node '" + ls.a + "'", l);
    if (!(ls.base_length_km > 0.0)) throw yaml_error("length_km must be > 0", l["length_km"]);
    auto key = std::minmax(ls.a, ls.b);
    if (!seen.insert({key.first, key.second}).second) {
      throw yaml_error("duplicate link " + ls.a + "-" + ls.b, l);
    }
    spec.links.push_back(std::move(ls));
  }
  return spec;
}

void emit_topology(YAML::Emitter& out, const TopologySpec& spec) {
  out << YAML::BeginMap;
  out << YAML::Key << "nodes" << YAML::Value << YAML::BeginSeq;
  for (const auto& n : spec.nodes) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << n.id
        << YAML::Key << "name" << YAML::Value << n.name << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "links" << YAML::Value << YAML::BeginSeq;
  for (const auto& l : spec.links) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "a" << YAML::Value << l.a << YAML::Key
        << "b" << YAML::Value << l.b << YAML::Key << "length_km" << YAML::Value
        << l.base_length_km << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
}

}  // namespace detail

TopologySpec parse_topology(std::string_view text) {
  return detail::topology_from_node(detail::load_yaml(text));
}

std::string serialize_topology(const TopologySpec& spec) {
  YAML::Emitter out;
  out.SetDoublePrecision(15);
  detail::emit_topology(out, spec);
  return std::string(out.c_str()) + "\n";
}

TopologySpec load_topology(const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  try {
    return parse_topology(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace qaplan
