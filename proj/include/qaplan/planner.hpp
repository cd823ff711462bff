#pragma once

// QKD-first network planning: CV-QKD demands are routed and checked against
// per-link key-rate capacity (less a margin), each link's remaining SpRS
// tolerance becomes a noise budget, and classical lightpaths are then
// admitted one by one under wavelength continuity and those budgets.

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qaplan/errors.hpp"
#include "qaplan/network.hpp"
#include "qaplan/physmodels.hpp"
#include "qaplan/spectrum.hpp"

namespace qaplan {

enum class WavelengthPolicy { kNaiveFirstFit, kQawa };

std::string_view to_string(WavelengthPolicy p);
WavelengthPolicy wavelength_policy_from_string(std::string_view s);

struct QPlacement {
  enum class Kind { kFixed, kSweepOptimal };
  Kind kind = Kind::kSweepOptimal;
  int slot = 0;  // used when kind == kFixed
};

struct PlannerConfig {
  double margin = 0.0;  // fraction of zero-load SKR capacity withheld, [0, 1)
  WavelengthPolicy policy = WavelengthPolicy::kQawa;
  double p_classical_dbm = -10.0;
  int k_paths = 3;
  QPlacement q_placement;
  /// Reference run: no QKD load and unlimited noise headroom on every link.
  bool classical_only = false;

  void validate() const;
  /// "naive", "qawa", or "classical_only".
  std::string label() const;
};

/// Everything physical the planner needs about one fiber direction.
struct PhysicalLayer {
  FiberParams fiber;
  CvQkdParams cvqkd;
  WdmGrid grid;
  BandWindow window;

  void validate() const;
};

inline constexpr double kUnlimited = std::numeric_limits<double>::infinity();

struct DirectionState {
  std::vector<bool> occupied;  // per slot
  double spurs_w = 0.0;        // cumulative SpRS at the quantum receiver
};

struct LinkState {
  std::array<DirectionState, 2> dir;
  int q_slot = 0;
  double qkd_allocated_bps = 0.0;
  double skr_capacity_bps = 0.0;
  /// Largest aggregate SpRS power one direction may carry while its key rate
  /// stays >= qkd_allocated_bps. kUnlimited for the classical-only reference.
  double noise_headroom_w = 0.0;
  std::vector<double> unit_spurs_w;  // SpRS per watt launched, per slot

  double residual_headroom_w(int d) const { return noise_headroom_w - dir[d].spurs_w; }
  int occupied_count(int d) const;
};

struct LinkViolation {
  LinkIndex link;
  std::string name;
  double load_bps;
  double capacity_bps;
  double allowed_bps;  // (1 - margin) * capacity
};

/// Mutable planning state for a single run. Holds a non-owning pointer to
/// the topology, which must outlive it.
struct NetworkState {
  const Topology* topology = nullptr;
  PhysicalLayer phys;  // cvqkd.nu_q_thz is set to the chosen quantum slot
  PlannerConfig config;
  int q_slot = 0;
  std::vector<int> slot_order;  // policy scan order, quantum slot excluded
  std::vector<LinkState> links;
  std::map<std::pair<NodeIndex, NodeIndex>, std::vector<Path>> path_cache;

  const std::vector<Path>& candidate_paths(NodeIndex src, NodeIndex dst);
};

struct QkdAllocation {
  bool feasible = true;
  std::vector<LinkViolation> violations;
  NetworkState state;
};

class InfeasibleAllocation : public Error {
 public:
  explicit InfeasibleAllocation(std::vector<LinkViolation> violations);
  const std::vector<LinkViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<LinkViolation> violations_;
};

/// Relative bisection tolerance on SpRS power used for noise headroom.
inline constexpr double kHeadroomRelTol = 1e-6;

/// Largest SpRS power P (W) such that the key rate of a fiber direction of
/// `length_km` collecting P stays >= load_bps (for load 0: stays > 0).
/// Bisection returning the feasible side; 0 if no positive P qualifies.
double compute_noise_headroom(const PhysicalLayer& phys, double length_km, double load_bps,
                              double rel_tol = kHeadroomRelTol);

/// Quantum slot chosen by the placement rule of `config`.
int choose_quantum_slot(const PhysicalLayer& phys, const PlannerConfig& config);

/// Routes and admits the QKD demand set all-or-nothing, then derives each
/// link's noise headroom. Infeasibility names every violating link.
QkdAllocation allocate_qkd(const Topology& topo, const std::vector<QkdDemand>& demands,
                           const PhysicalLayer& phys, const PlannerConfig& config);

struct Admission {
  bool accepted = false;
  Path path;
  int slot = -1;
  double added_spurs_w = 0.0;  // per-link SpRS of the new channel on the first hop
};

/// Admits one bidirectional lightpath: the first (path, slot) in path-length
/// then policy order whose slot is free on every traversed fiber and whose
/// SpRS keeps every traversed fiber within its noise headroom.
Admission admit_lightpath(NetworkState& state, NodeIndex src, NodeIndex dst);

/// Admits each lightpath of the demand in turn.
std::vector<Admission> admit_demand(NetworkState& state, const ClassicalDemand& demand);

struct LinkReport {
  std::string name;
  double length_km;
  double utilization;  // occupied classical slots / available classical slots
  double qkd_allocated_bps;
  double skr_capacity_bps;
  double noise_headroom_w;
  double residual_headroom_w;

  bool operator==(const LinkReport&) const = default;
};

struct PlanReport {
  std::string policy;
  double margin = 0.0;
  double p_dbm = 0.0;
  int offered = 0;
  int blocked = 0;
  double blocking_ratio = 0.0;  // blocked / offered, 0 when offered == 0
  bool qkd_feasible = true;
  int q_slot = 0;
  std::uint64_t request_hash = 0;
  std::vector<LinkReport> per_link;

  bool operator==(const PlanReport&) const = default;
};

PlanReport make_report(const NetworkState& state, int offered, int blocked,
                       std::uint64_t request_hash);

/// Seeded classical requests, one lightpath each, uniformly random ordered
/// node pairs with src != dst. A longer sequence extends a shorter one.
std::vector<ClassicalDemand> generate_requests(const Topology& topo, int count,
                                               std::uint64_t seed);

/// FNV-1a over the (src, dst) sequence.
std::uint64_t request_sequence_hash(const std::vector<ClassicalDemand>& requests,
                                    std::size_t count);

struct LevelResult {
  PlanReport report;
  NetworkState state;
};

/// Allocates QKD once, then for every offered-load level admits the first
/// `level` requests of the seeded sequence into a fresh copy of that state.
/// Throws InfeasibleAllocation when the QKD demand set does not fit.
std::vector<LevelResult> run_scenario_detailed(const Topology& topo,
                                               const std::vector<QkdDemand>& qkd,
                                               const std::vector<int>& offered_levels,
                                               const PhysicalLayer& phys,
                                               const PlannerConfig& config, std::uint64_t seed);

std::vector<PlanReport> run_scenario(const Topology& topo, const std::vector<QkdDemand>& qkd,
                                     const std::vector<int>& offered_levels,
                                     const PhysicalLayer& phys, const PlannerConfig& config,
                                     std::uint64_t seed);

struct Curve {
  PlannerConfig config;
  std::vector<PlanReport> reports;
};

/// The five comparison configurations: naive 0 dBm, naive -10 dBm, qawa
/// 0 dBm (all without margin), qawa -10 dBm with `base.margin`, and the
/// classical-only reference. k_paths and q_placement come from `base`.
std::vector<PlannerConfig> comparison_configs(const PlannerConfig& base);

std::vector<Curve> compare_policies(const Topology& topo, const std::vector<QkdDemand>& qkd,
                                    const std::vector<int>& offered_levels,
                                    const PhysicalLayer& phys, const PlannerConfig& base,
                                    std::uint64_t seed);

std::vector<PlanReport> flatten(const std::vector<Curve>& curves);

struct SafetyReport {
  bool ok = true;
  double worst_margin_ratio = kUnlimited;  // min over fibers of skr / allocated
  double worst_headroom_mismatch_w = 0.0;
  std::vector<std::string> failures;
};

/// Recomputes every fiber's key rate from its actual classical occupancy
/// and its noise headroom from scratch, and checks them against the QKD
/// allocation and the cached residual headroom.
SafetyReport verify_safety(const NetworkState& state, double rel_tol = kHeadroomRelTol);

}  // namespace qaplan
