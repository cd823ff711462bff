#pragma once

// Small helpers that turn yaml-cpp failures into positioned ParseErrors.

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include "qaplan/errors.hpp"
#include "qaplan/network.hpp"

namespace qaplan::detail {

inline ParseError yaml_error(const std::string& what, const YAML::Node& at) {
  const YAML::Mark m = at.Mark();
  if (m.is_null()) return ParseError(what);
  return ParseError(what, m.line + 1, m.column + 1);
}

inline YAML::Node load_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void check_keys(const YAML::Node& node, std::initializer_list<std::string_view> allowed,
                       const std::string& what) {
  if (!node.IsMap()) throw yaml_error(what + " must be a mapping", node);
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw yaml_error("unknown key '" + key + "' in " + what, kv.first);
  }
}

template <typename T>
T convert(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw yaml_error("invalid value for '" + key + "'", node);
  }
}

template <typename T>
T require(const YAML::Node& parent, const std::string& key) {
  const YAML::Node node = parent[key];
  if (!node) throw yaml_error("missing key '" + key + "'", parent);
  return convert<T>(node, key);
}

template <typename T>
T optional(const YAML::Node& parent, const std::string& key, T fallback) {
  const YAML::Node node = parent[key];
  if (!node) return fallback;
  return convert<T>(node, key);
}

TopologySpec topology_from_node(const YAML::Node& root);
void emit_topology(YAML::Emitter& out, const TopologySpec& spec);

}  // namespace qaplan::detail
