#include "qaplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qaplan {

std::string_view to_string(WavelengthPolicy p) {
  return p == WavelengthPolicy::kQawa ? "qawa" : "naive";
}

WavelengthPolicy wavelength_policy_from_string(std::string_view s) {
  if (s == "qawa") return WavelengthPolicy::kQawa;
  if (s == "naive" || s == "naive_first_fit") return WavelengthPolicy::kNaiveFirstFit;
  throw InvalidInput("unknown wavelength policy '" + std::string(s) +
                     "' (expected naive or qawa)");
}

void PlannerConfig::validate() const {
  if (!(margin >= 0.0 && margin < 1.0)) throw InvalidInput("margin must be in [0, 1)");
  if (!std::isfinite(p_classical_dbm)) throw InvalidInput("p_classical_dbm must be finite");
  if (k_paths < 1) throw InvalidInput("k_paths must be >= 1");
}

std::string PlannerConfig::label() const {
  return classical_only ? "classical_only" : std::string(to_string(policy));
}

void PhysicalLayer::validate() const {
  fiber.validate();
  cvqkd.validate();
  grid.validate(window);
}

int LinkState::occupied_count(int d) const {
  return static_cast<int>(std::count(dir[d].occupied.begin(), dir[d].occupied.end(), true));
}

const std::vector<Path>& NetworkState::candidate_paths(NodeIndex src, NodeIndex dst) {
  auto it = path_cache.find({src, dst});
  if (it == path_cache.end()) {
    it = path_cache.emplace(std::make_pair(src, dst),
                            k_shortest_paths(*topology, src, dst, config.k_paths))
             .first;
  }
  return it->second;
}

InfeasibleAllocation::InfeasibleAllocation(std::vector<LinkViolation> violations)
    : Error([&] {
        std::ostringstream os;
        os << "QKD allocation infeasible on " << violations.size() << " link(s):";
        for (const auto& v : violations) {
          os << " " << v.name << " (load " << v.load_bps << " bps > allowed " << v.allowed_bps
             << " bps of capacity " << v.capacity_bps << " bps);";
        }
        return os.str();
      }()),
      violations_(std::move(violations)) {}

double compute_noise_headroom(const PhysicalLayer& phys, double length_km, double load_bps,
                              double rel_tol) {
  auto ok = [&](double p_raman) {
    const SkrResult r = link_skr_with_raman(phys.fiber, length_km, phys.cvqkd, p_raman);
    return load_bps > 0.0 ? r.rate_bps >= load_bps : r.bits_per_symbol > 0.0;
  };
  if (!ok(0.0)) return 0.0;
  // The rate falls strictly with any added noise, so a link already at its
  // capacity tolerates none; the bisection alone would return a rounding-level
  // positive power here.
  if (load_bps > 0.0 &&
      link_skr_with_raman(phys.fiber, length_km, phys.cvqkd, 0.0).rate_bps == load_bps) {
    return 0.0;
  }

  double lo = 0.0;
  double hi = 1e-12;
  for (int i = 0; ok(hi); ++i) {
    lo = hi;
    hi *= 2.0;
    if (i > 200) throw NumericFailure("noise headroom bracket did not close");
  }
  for (int i = 0; i < 400 && hi - lo > rel_tol * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

int choose_quantum_slot(const PhysicalLayer& phys, const PlannerConfig& config) {
  if (config.q_placement.kind == QPlacement::Kind::kFixed) {
    if (!phys.grid.contains(config.q_placement.slot)) {
      throw InvalidInput("fixed quantum slot " + std::to_string(config.q_placement.slot) +
                         " outside grid");
    }
    return config.q_placement.slot;
  }
  // The argmin does not depend on span length or launch power; 1 km, 0 dBm.
  return placement_sweep(phys.grid, phys.fiber, 1.0, 0.0, phys.cvqkd.b_q_ghz).argmin_slot;
}

QkdAllocation allocate_qkd(const Topology& topo, const std::vector<QkdDemand>& demands,
                           const PhysicalLayer& phys, const PlannerConfig& config) {
  phys.validate();
  config.validate();

  QkdAllocation out;
  NetworkState& st = out.state;
  st.topology = &topo;
  st.phys = phys;
  st.config = config;
  st.q_slot = choose_quantum_slot(phys, config);
  st.phys.cvqkd.nu_q_thz = phys.grid.slot_freq_thz(st.q_slot);
  st.slot_order = config.policy == WavelengthPolicy::kQawa
                      ? qawa_order(phys.grid, st.q_slot, phys.fiber, 1.0, phys.cvqkd.b_q_ghz)
                      : first_fit_order(phys.grid, st.q_slot);

  const std::vector<double> load =
      config.classical_only ? std::vector<double>(topo.link_count(), 0.0) : route_qkd(topo, demands);

  st.links.resize(topo.link_count());
  for (LinkIndex l = 0; l < topo.link_count(); ++l) {
    const double length = topo.links()[l].length_km;
    LinkState& ls = st.links[l];
    for (auto& d : ls.dir) d.occupied.assign(phys.grid.n_slots, false);
    ls.q_slot = st.q_slot;
    ls.unit_spurs_w =
        slot_contributions(phys.grid, st.q_slot, phys.fiber, length, phys.cvqkd.b_q_ghz);
    if (config.classical_only) {
      ls.noise_headroom_w = kUnlimited;
      continue;
    }
    ls.qkd_allocated_bps = load[l];
    ls.skr_capacity_bps = link_skr_with_raman(phys.fiber, length, st.phys.cvqkd, 0.0).rate_bps;
    const double allowed = (1.0 - config.margin) * ls.skr_capacity_bps;
    if (load[l] > allowed) {
      out.feasible = false;
      out.violations.push_back({l, topo.link_name(l), load[l], ls.skr_capacity_bps, allowed});
      ls.noise_headroom_w = 0.0;
      continue;
    }
    ls.noise_headroom_w = compute_noise_headroom(st.phys, length, load[l]);
  }
  return out;
}

Admission admit_lightpath(NetworkState& st, NodeIndex src, NodeIndex dst) {
  const double p_w = dbm_to_watt(st.config.p_classical_dbm);
  const auto& paths = st.candidate_paths(src, dst);
  for (const Path& path : paths) {
    for (int slot : st.slot_order) {
      bool fits = true;
      for (LinkIndex l : path.links) {
        const LinkState& ls = st.links[l];
        const double add = p_w * ls.unit_spurs_w[slot];
        for (const auto& d : ls.dir) {
          if (d.occupied[slot] || d.spurs_w + add > ls.noise_headroom_w) {
            fits = false;
            break;
          }
        }
        if (!fits) break;
      }
      if (!fits) continue;

      Admission a{true, path, slot, p_w * st.links[path.links.front()].unit_spurs_w[slot]};
      for (LinkIndex l : path.links) {
        LinkState& ls = st.links[l];
        for (auto& d : ls.dir) {
          d.occupied[slot] = true;
          d.spurs_w += p_w * ls.unit_spurs_w[slot];
        }
      }
      return a;
    }
  }
  return {};
}

std::vector<Admission> admit_demand(NetworkState& state, const ClassicalDemand& demand) {
  if (demand.src == demand.dst) throw InvalidInput("classical demand with src == dst");
  if (demand.lightpaths_requested < 1) throw InvalidInput("lightpaths_requested must be >= 1");
  std::vector<Admission> out;
  for (int i = 0; i < demand.lightpaths_requested; ++i) {
    out.push_back(admit_lightpath(state, demand.src, demand.dst));
  }
  return out;
}

PlanReport make_report(const NetworkState& st, int offered, int blocked,
                       std::uint64_t request_hash) {
  PlanReport r;
  r.policy = st.config.label();
  r.margin = st.config.margin;
  r.p_dbm = st.config.p_classical_dbm;
  r.offered = offered;
  r.blocked = blocked;
  r.blocking_ratio = offered == 0 ? 0.0 : static_cast<double>(blocked) / offered;
  r.qkd_feasible = true;
  r.q_slot = st.q_slot;
  r.request_hash = request_hash;
  const double usable = static_cast<double>(st.slot_order.size());
  for (LinkIndex l = 0; l < static_cast<LinkIndex>(st.links.size()); ++l) {
    const LinkState& ls = st.links[l];
    const double residual = std::min(ls.residual_headroom_w(0), ls.residual_headroom_w(1));
    r.per_link.push_back({st.topology->link_name(l), st.topology->links()[l].length_km,
                          ls.occupied_count(0) / usable, ls.qkd_allocated_bps,
                          ls.skr_capacity_bps, ls.noise_headroom_w, residual});
  }
  return r;
}

namespace {

// Unbiased draw in [0, n) by rejection; portable across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace

std::vector<ClassicalDemand> generate_requests(const Topology& topo, int count,
                                               std::uint64_t seed) {
  const int n = topo.node_count();
  if (n < 2) throw InvalidInput("need at least two nodes to generate requests");
  if (count < 0) throw InvalidInput("request count must be >= 0");
  std::mt19937_64 rng(seed);
  std::vector<ClassicalDemand> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const auto src = static_cast<NodeIndex>(bounded(rng, n));
    auto dst = static_cast<NodeIndex>(bounded(rng, n - 1));
    if (dst >= src) ++dst;
    out.push_back({src, dst, 1});
  }
  return out;
}

std::uint64_t request_sequence_hash(const std::vector<ClassicalDemand>& requests,
                                    std::size_t count) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint32_t v) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (std::size_t i = 0; i < count && i < requests.size(); ++i) {
    mix(static_cast<std::uint32_t>(requests[i].src));
    mix(static_cast<std::uint32_t>(requests[i].dst));
  }
  return h;
}

std::vector<LevelResult> run_scenario_detailed(const Topology& topo,
                                               const std::vector<QkdDemand>& qkd,
                                               const std::vector<int>& offered_levels,
                                               const PhysicalLayer& phys,
                                               const PlannerConfig& config, std::uint64_t seed) {
  int max_level = 0;
  for (int level : offered_levels) {
    if (level < 0) throw InvalidInput("offered load levels must be >= 0");
    max_level = std::max(max_level, level);
  }
  QkdAllocation base = allocate_qkd(topo, qkd, phys, config);
  if (!base.feasible) throw InfeasibleAllocation(base.violations);

  const auto requests = generate_requests(topo, max_level, seed);
  std::vector<LevelResult> out;
  out.reserve(offered_levels.size());
  for (int level : offered_levels) {
    NetworkState st = base.state;
    int blocked = 0;
    for (int i = 0; i < level; ++i) {
      if (!admit_lightpath(st, requests[i].src, requests[i].dst).accepted) ++blocked;
    }
    PlanReport report = make_report(st, level, blocked, request_sequence_hash(requests, level));
    out.push_back({std::move(report), std::move(st)});
  }
  return out;
}

std::vector<PlanReport> run_scenario(const Topology& topo, const std::vector<QkdDemand>& qkd,
                                     const std::vector<int>& offered_levels,
                                     const PhysicalLayer& phys, const PlannerConfig& config,
                                     std::uint64_t seed) {
  std::vector<PlanReport> out;
  for (auto& r : run_scenario_detailed(topo, qkd, offered_levels, phys, config, seed)) {
    out.push_back(std::move(r.report));
  }
  return out;
}

std::vector<PlannerConfig> comparison_configs(const PlannerConfig& base) {
  auto make = [&](WavelengthPolicy policy, double margin, double p_dbm) {
    PlannerConfig c = base;
    c.policy = policy;
    c.margin = margin;
    c.p_classical_dbm = p_dbm;
    c.classical_only = false;
    return c;
  };
  PlannerConfig reference = make(WavelengthPolicy::kNaiveFirstFit, 0.0, 0.0);
  reference.classical_only = true;
  return {
      make(WavelengthPolicy::kNaiveFirstFit, 0.0, 0.0),
      make(WavelengthPolicy::kNaiveFirstFit, 0.0, -10.0),
      make(WavelengthPolicy::kQawa, 0.0, 0.0),
      make(WavelengthPolicy::kQawa, base.margin, -10.0),
      reference,
  };
}

std::vector<Curve> compare_policies(const Topology& topo, const std::vector<QkdDemand>& qkd,
                                    const std::vector<int>& offered_levels,
                                    const PhysicalLayer& phys, const PlannerConfig& base,
                                    std::uint64_t seed) {
  std::vector<Curve> curves;
  for (const PlannerConfig& c : comparison_configs(base)) {
    curves.push_back({c, run_scenario(topo, qkd, offered_levels, phys, c, seed)});
  }
  return curves;
}

std::vector<PlanReport> flatten(const std::vector<Curve>& curves) {
  std::vector<PlanReport> out;
  for (const auto& c : curves) out.insert(out.end(), c.reports.begin(), c.reports.end());
  return out;
}

SafetyReport verify_safety(const NetworkState& st, double rel_tol) {
  SafetyReport rep;
  const Topology& topo = *st.topology;
  const double p_w = dbm_to_watt(st.config.p_classical_dbm);
  for (LinkIndex l = 0; l < topo.link_count(); ++l) {
    const LinkState& ls = st.links[l];
    const double length = topo.links()[l].length_km;
    const double headroom = st.config.classical_only
                                ? kUnlimited
                                : compute_noise_headroom(st.phys, length, ls.qkd_allocated_bps);
    for (int d = 0; d < 2; ++d) {
      std::vector<ClassicalChannel> load;
      for (int s = 0; s < st.phys.grid.n_slots; ++s) {
        if (ls.dir[d].occupied[s]) {
          if (s == st.q_slot) rep.failures.push_back(topo.link_name(l) + ": quantum slot lit");
          load.push_back({p_w, st.phys.grid.slot_freq_thz(s)});
        }
      }
      const std::string where = topo.link_name(l) + (d == 0 ? " (a->b)" : " (b->a)");
      const double p_raman = link_raman_power(st.phys.fiber, length, st.phys.cvqkd, load);
      if (!st.config.classical_only && ls.qkd_allocated_bps > 0.0) {
        const double rate =
            link_skr_with_raman(st.phys.fiber, length, st.phys.cvqkd, p_raman).rate_bps;
        const double ratio = rate / ls.qkd_allocated_bps;
        rep.worst_margin_ratio = std::min(rep.worst_margin_ratio, ratio);
        if (ratio < 1.0 - rel_tol) {
          std::ostringstream os;
          os << where << ": key rate " << rate << " bps below allocation "
             << ls.qkd_allocated_bps << " bps";
          rep.failures.push_back(os.str());
        }
      }
      if (std::isfinite(headroom)) {
        const double mismatch =
            std::abs(ls.residual_headroom_w(d) - (headroom - p_raman));
        rep.worst_headroom_mismatch_w = std::max(rep.worst_headroom_mismatch_w, mismatch);
        if (mismatch > rel_tol * headroom + 1e-30) {
          std::ostringstream os;
          os << where << ": cached residual headroom " << ls.residual_headroom_w(d)
             << " W differs from recomputed " << headroom - p_raman << " W";
          rep.failures.push_back(os.str());
        }
      }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace qaplan
