#pragma once

// Fiber mesh topology, loop-free k-shortest-path routing, and the demand
// types consumed by the planner.

#include <cstdint>
#include <string>
#include <vector>

namespace qaplan {

/// Index of a node inside a Topology (0-based, in declaration order).
using NodeIndex = int;
/// Index of an undirected link inside a Topology.
using LinkIndex = int;

struct NodeSpec {
  int id;            // user-facing id, e.g. 1..7 for the default mesh
  std::string name;

  bool operator==(const NodeSpec&) const = default;
};

struct LinkSpec {
  std::string a;  // node names
  std::string b;
  double base_length_km;

  bool operator==(const LinkSpec&) const = default;
};

/// Unscaled description of a mesh as read from a topology file.
struct TopologySpec {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;

  bool operator==(const TopologySpec&) const = default;
};

/// The 7-node / 8-link reference mesh of mainland Spain.
TopologySpec default_topology_spec();

struct ScaleRange {
  double min = 1e-3;
  double max = 1.0;
};

struct Link {
  NodeIndex a;
  NodeIndex b;
  double base_length_km;
  double length_km;  // base * lambda_scale
};

/// Immutable, validated topology. Each link stands for two unidirectional
/// fibers; direction 0 carries a -> b, direction 1 carries b -> a.
class Topology {
 public:
  const std::vector<NodeSpec>& nodes() const noexcept { return nodes_; }
  const std::vector<Link>& links() const noexcept { return links_; }
  double lambda_scale() const noexcept { return lambda_scale_; }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  int link_count() const noexcept { return static_cast<int>(links_.size()); }

  NodeIndex node_index(const std::string& name) const;
  /// Link joining u and v, or -1.
  LinkIndex link_between(NodeIndex u, NodeIndex v) const;
  /// Neighbors of u in ascending node-index order.
  const std::vector<NodeIndex>& neighbors(NodeIndex u) const { return adjacency_[u]; }
  std::string link_name(LinkIndex l) const;

 private:
  friend Topology build_topology(const TopologySpec&, double, ScaleRange);
  std::vector<NodeSpec> nodes_;
  std::vector<Link> links_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<std::vector<LinkIndex>> link_matrix_;
  double lambda_scale_ = 1.0;
};

/// Validates the spec (unique ids and names, known link endpoints, no self
/// loops or duplicate links, positive lengths, connected graph) and applies
/// the distance scale. Throws InvalidTopology.
Topology build_topology(const TopologySpec& spec, double lambda_scale, ScaleRange range = {});

struct Path {
  std::vector<NodeIndex> nodes;
  std::vector<LinkIndex> links;
  double base_length_km = 0.0;
  double length_km = 0.0;

  int hops() const { return static_cast<int>(links.size()); }
  /// Fiber direction used on links[i] (0: a->b, 1: b->a).
  int direction(const Topology& topo, std::size_t i) const;
};

/// Up to k loop-free paths from src to dst ordered by length, ties broken by
/// the lexicographic node-index sequence (Yen's algorithm).
std::vector<Path> k_shortest_paths(const Topology& topo, NodeIndex src, NodeIndex dst, int k);

struct QkdDemand {
  NodeIndex src;
  NodeIndex dst;
  double key_rate_bps;
};

struct ClassicalDemand {
  NodeIndex src;
  NodeIndex dst;
  int lightpaths_requested = 1;
};

/// One demand per unordered node pair, sharing `total_bps` equally.
std::vector<QkdDemand> uniform_qkd_demands(const Topology& topo, double total_bps);

/// Per-link QKD load: each demand follows its single shortest path and every
/// traversed link carries the full key rate (trusted-relay re-keying).
std::vector<double> route_qkd(const Topology& topo, const std::vector<QkdDemand>& demands);

}  // namespace qaplan
