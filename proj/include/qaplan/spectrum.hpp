#pragma once

// C-band WDM grid, channel assignments, and SpRS-aware slot ordering.

#include <vector>

#include "qaplan/physmodels.hpp"

namespace qaplan {

struct BandWindow {
  double min_thz = 191.5;
  double max_thz = 196.0;
};

struct WdmGrid {
  double f_start_thz = 191.7;
  double spacing_ghz = 100.0;
  int n_slots = 40;

  /// Throws InvalidInput unless n_slots >= 2, spacing > 0 and
  /// [f_start, f_start + n_slots*spacing] lies inside the window.
  void validate(const BandWindow& window = {}) const;

  double slot_freq_thz(int slot) const;
  /// Classical-minus-quantum frequency offset between two slots, GHz.
  double detuning_ghz(int pump_slot, int probe_slot) const;
  bool contains(int slot) const { return slot >= 0 && slot < n_slots; }
};

struct ClassicalSlot {
  int slot;
  double power_dbm;
};

struct ChannelAssignment {
  int q_slot = 0;
  std::vector<ClassicalSlot> classical;

  void validate(const WdmGrid& grid) const;
};

/// SpRS power (W) at the quantum slot produced by 1 W launched in `pump_slot`.
double unit_slot_spurs(const WdmGrid& grid, int pump_slot, int q_slot,
                       const FiberParams& fiber, double length_km, double b_q_ghz);

/// Per-slot unit-power contributions onto q_slot; the q_slot entry is 0.
std::vector<double> slot_contributions(const WdmGrid& grid, int q_slot,
                                       const FiberParams& fiber, double length_km,
                                       double b_q_ghz);

/// Total SpRS power (W) collected at the quantum slot.
double aggregate_spurs(const WdmGrid& grid, const ChannelAssignment& assignment,
                       const FiberParams& fiber, double length_km, double b_q_ghz);

struct PlacementPoint {
  int q_slot;
  double freq_thz;
  double spurs_w;
};

struct PlacementSweep {
  std::vector<PlacementPoint> points;  // ordered by slot index
  int argmin_slot;
};

/// For every candidate quantum slot, the aggregate SpRS with all other slots
/// lit at p_per_channel_dbm. Ties in the minimum resolve to the lowest slot.
PlacementSweep placement_sweep(const WdmGrid& grid, const FiberParams& fiber,
                               double length_km, double p_per_channel_dbm,
                               double b_q_ghz);

/// Quantum-aware order: every slot but q_slot, ascending by unit-power SpRS
/// contribution onto q_slot, ties by ascending index.
std::vector<int> qawa_order(const WdmGrid& grid, int q_slot, const FiberParams& fiber,
                            double length_km, double b_q_ghz);

/// Naive comparator: every slot but q_slot in ascending index order.
std::vector<int> first_fit_order(const WdmGrid& grid, int q_slot);

}  // namespace qaplan
