#include "qaplan/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <unordered_set>

#include "qaplan/errors.hpp"

namespace qaplan {

TopologySpec default_topology_spec() {
  return TopologySpec{
      {{1, "Madrid"},
       {2, "Zaragoza"},
       {3, "Barcelona"},
       {4, "Valencia"},
       {5, "Murcia"},
       {6, "Malaga"},
       {7, "Sevilla"}},
      {{"Barcelona", "Valencia", 303.0},
       {"Valencia", "Murcia", 177.0},
       {"Murcia", "Malaga", 323.0},
       {"Malaga", "Sevilla", 158.0},
       {"Sevilla", "Madrid", 391.0},
       {"Madrid", "Zaragoza", 272.0},
       {"Zaragoza", "Barcelona", 257.0},
       {"Madrid", "Valencia", 302.0}},
  };
}

NodeIndex Topology::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return static_cast<NodeIndex>(i);
  }
  throw InvalidInput("unknown node '" + name + "'");
}

LinkIndex Topology::link_between(NodeIndex u, NodeIndex v) const {
  if (u < 0 || v < 0 || u >= node_count() || v >= node_count()) return -1;
  return link_matrix_[u][v];
}

std::string Topology::link_name(LinkIndex l) const {
  const Link& k = links_.at(l);
  return nodes_[k.a].name + "-" + nodes_[k.b].name;
}

Topology build_topology(const TopologySpec& spec, double lambda_scale, ScaleRange range) {
  if (!(lambda_scale >= range.min && lambda_scale <= range.max)) {
    throw InvalidTopology("lambda_scale " + std::to_string(lambda_scale) + " outside [" +
                          std::to_string(range.min) + ", " + std::to_string(range.max) + "]");
  }
  if (spec.nodes.empty()) throw InvalidTopology("topology has no nodes");

  Topology t;
  t.lambda_scale_ = lambda_scale;
  t.nodes_ = spec.nodes;
  const int n = static_cast<int>(spec.nodes.size());
  std::set<int> ids;
  std::set<std::string> names;
  for (const auto& node : spec.nodes) {
    if (node.name.empty()) throw InvalidTopology("node with empty name");
    if (!ids.insert(node.id).second) {
      throw InvalidTopology("duplicate node id " + std::to_string(node.id));
    }
    if (!names.insert(node.name).second) {
      throw InvalidTopology("duplicate node name '" + node.name + "'");
    }
  }

  t.adjacency_.assign(n, {});
  t.link_matrix_.assign(n, std::vector<LinkIndex>(n, -1));
  auto lookup = [&](const std::string& name) {
    for (int i = 0; i < n; ++i) {
      if (spec.nodes[i].name == name) return i;
    }
    throw InvalidTopology("link references unknown node '" + name + "'");
  };
  for (const auto& ls : spec.links) {
    const int a = lookup(ls.a);
    const int b = lookup(ls.b);
    if (a == b) throw InvalidTopology("self-loop at node '" + ls.a + "'");
    if (!(ls.base_length_km > 0.0) || !std::isfinite(ls.base_length_km)) {
      throw InvalidTopology("link " + ls.a + "-" + ls.b + " must have positive length");
    }
    if (t.link_matrix_[a][b] >= 0) {
      throw InvalidTopology("duplicate link " + ls.a + "-" + ls.b);
    }
    const LinkIndex idx = static_cast<LinkIndex>(t.links_.size());
    t.links_.push_back({a, b, ls.base_length_km, ls.base_length_km * lambda_scale});
    t.link_matrix_[a][b] = t.link_matrix_[b][a] = idx;
    t.adjacency_[a].push_back(b);
    t.adjacency_[b].push_back(a);
  }
  for (auto& adj : t.adjacency_) std::sort(adj.begin(), adj.end());

  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : t.adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) {
      throw InvalidTopology("topology is disconnected: node '" + spec.nodes[i].name +
                            "' unreachable from '" + spec.nodes[0].name + "'");
    }
  }
  return t;
}

int Path::direction(const Topology& topo, std::size_t i) const {
  return topo.links()[links[i]].a == nodes[i] ? 0 : 1;
}

namespace {

struct Candidate {
  double base_length;
  std::vector<NodeIndex> nodes;

  bool operator<(const Candidate& o) const {
    if (base_length != o.base_length) return base_length < o.base_length;
    return nodes < o.nodes;
  }
  bool operator>(const Candidate& o) const { return o < *this; }
};

Path make_path(const Topology& topo, std::vector<NodeIndex> nodes) {
  Path p;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const LinkIndex l = topo.link_between(nodes[i], nodes[i + 1]);
    p.links.push_back(l);
    p.base_length_km += topo.links()[l].base_length_km;
  }
  p.length_km = p.base_length_km * topo.lambda_scale();
  p.nodes = std::move(nodes);
  return p;
}

// Shortest path under the (length, node sequence) order, avoiding banned
// nodes and banned directed hops.
std::optional<std::vector<NodeIndex>> shortest_lex(
    const Topology& topo, NodeIndex src, NodeIndex dst, const std::vector<bool>& banned_node,
    const std::set<std::pair<NodeIndex, NodeIndex>>& banned_hop) {
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  std::vector<bool> done(topo.node_count(), false);
  queue.push({0.0, {src}});
  while (!queue.empty()) {
    Candidate c = queue.top();
    queue.pop();
    const NodeIndex u = c.nodes.back();
    if (done[u]) continue;
    done[u] = true;
    if (u == dst) return std::move(c.nodes);
    for (NodeIndex v : topo.neighbors(u)) {
      if (done[v] || banned_node[v] || banned_hop.count({u, v})) continue;
      Candidate next{c.base_length + topo.links()[topo.link_between(u, v)].base_length_km,
                     c.nodes};
      next.nodes.push_back(v);
      queue.push(std::move(next));
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Path> k_shortest_paths(const Topology& topo, NodeIndex src, NodeIndex dst, int k) {
  const int n = topo.node_count();
  if (src < 0 || dst < 0 || src >= n || dst >= n) throw InvalidInput("node index out of range");
  if (src == dst) throw InvalidInput("k_shortest_paths requires src != dst");
  if (k < 1) throw InvalidInput("k must be >= 1");

  std::vector<Path> found;
  const std::vector<bool> no_ban(n, false);
  auto first = shortest_lex(topo, src, dst, no_ban, {});
  if (!first) return found;
  found.push_back(make_path(topo, std::move(*first)));

  std::set<Candidate> pending;
  while (static_cast<int>(found.size()) < k) {
    const std::vector<NodeIndex>& last = found.back().nodes;
    for (std::size_t i = 0; i + 1 < last.size(); ++i) {
      const std::vector<NodeIndex> root(last.begin(), last.begin() + i + 1);
      std::set<std::pair<NodeIndex, NodeIndex>> banned_hop;
      for (const auto& p : found) {
        if (p.nodes.size() > i + 1 && std::equal(root.begin(), root.end(), p.nodes.begin())) {
          banned_hop.insert({p.nodes[i], p.nodes[i + 1]});
        }
      }
      std::vector<bool> banned_node(n, false);
      for (std::size_t j = 0; j < i; ++j) banned_node[root[j]] = true;

      auto spur = shortest_lex(topo, root.back(), dst, banned_node, banned_hop);
      if (!spur) continue;
      std::vector<NodeIndex> full = root;
      full.insert(full.end(), spur->begin() + 1, spur->end());
      Path candidate = make_path(topo, std::move(full));
      pending.insert({candidate.base_length_km, std::move(candidate.nodes)});
    }
    // Drop candidates already accepted.
    while (!pending.empty()) {
      const bool dup = std::any_of(found.begin(), found.end(), [&](const Path& p) {
        return p.nodes == pending.begin()->nodes;
      });
      if (!dup) break;
      pending.erase(pending.begin());
    }
    if (pending.empty()) break;
    found.push_back(make_path(topo, pending.begin()->nodes));
    pending.erase(pending.begin());
  }
  return found;
}

std::vector<QkdDemand> uniform_qkd_demands(const Topology& topo, double total_bps) {
  if (!(total_bps >= 0.0)) throw InvalidInput("QKD total must be >= 0");
  const int n = topo.node_count();
  std::vector<QkdDemand> out;
  if (total_bps == 0.0 || n < 2) return out;
  const double per_pair = total_bps / (n * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.push_back({i, j, per_pair});
  }
  return out;
}

std::vector<double> route_qkd(const Topology& topo, const std::vector<QkdDemand>& demands) {
  std::vector<double> load(topo.link_count(), 0.0);
  for (const auto& d : demands) {
    if (d.src == d.dst) throw InvalidInput("QKD demand with src == dst");
    if (!(d.key_rate_bps > 0.0)) throw InvalidInput("QKD demand key_rate_bps must be > 0");
    const auto paths = k_shortest_paths(topo, d.src, d.dst, 1);
    if (paths.empty()) throw InvalidTopology("no path for QKD demand");
    for (LinkIndex l : paths.front().links) load[l] += d.key_rate_bps;
  }
  return load;
}

}  // namespace qaplan
