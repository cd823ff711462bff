#include "qaplan/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qaplan/errors.hpp"

namespace qaplan {

void WdmGrid::validate(const BandWindow& window) const {
  if (n_slots < 2) throw InvalidInput("grid n_slots must be >= 2");
  if (!(spacing_ghz > 0.0) || !std::isfinite(spacing_ghz)) {
    throw InvalidInput("grid spacing_ghz must be > 0");
  }
  const double end_thz = f_start_thz + n_slots * spacing_ghz / 1e3;
  if (!(f_start_thz >= window.min_thz) || !(end_thz <= window.max_thz)) {
    throw InvalidInput("grid [" + std::to_string(f_start_thz) + ", " + std::to_string(end_thz) +
                       "] THz exceeds band window [" + std::to_string(window.min_thz) + ", " +
                       std::to_string(window.max_thz) + "] THz");
  }
}

double WdmGrid::slot_freq_thz(int slot) const {
  if (!contains(slot)) throw InvalidInput("slot " + std::to_string(slot) + " outside grid");
  return f_start_thz + slot * spacing_ghz / 1e3;
}

double WdmGrid::detuning_ghz(int pump_slot, int probe_slot) const {
  return (pump_slot - probe_slot) * spacing_ghz;
}

void ChannelAssignment::validate(const WdmGrid& grid) const {
  if (!grid.contains(q_slot)) {
    throw InvalidInput("quantum slot " + std::to_string(q_slot) + " outside grid");
  }
  std::vector<bool> seen(grid.n_slots, false);
  for (const auto& c : classical) {
    if (!grid.contains(c.slot)) {
      throw InvalidInput("classical slot " + std::to_string(c.slot) + " outside grid");
    }
    if (c.slot == q_slot) throw InvalidInput("classical slot collides with quantum slot");
    if (seen[c.slot]) throw InvalidInput("duplicate classical slot " + std::to_string(c.slot));
    if (!std::isfinite(c.power_dbm)) throw InvalidInput("classical power must be finite");
    seen[c.slot] = true;
  }
}

double unit_slot_spurs(const WdmGrid& grid, int pump_slot, int q_slot, const FiberParams& fiber,
                       double length_km, double b_q_ghz) {
  const double rho = fiber.raman->coefficient(grid.detuning_ghz(pump_slot, q_slot));
  return spurs_power_forward(1.0, length_km, fiber, rho, b_q_ghz);
}

std::vector<double> slot_contributions(const WdmGrid& grid, int q_slot, const FiberParams& fiber,
                                       double length_km, double b_q_ghz) {
  if (!grid.contains(q_slot)) throw InvalidInput("quantum slot outside grid");
  std::vector<double> out(grid.n_slots, 0.0);
  for (int s = 0; s < grid.n_slots; ++s) {
    if (s != q_slot) out[s] = unit_slot_spurs(grid, s, q_slot, fiber, length_km, b_q_ghz);
  }
  return out;
}

double aggregate_spurs(const WdmGrid& grid, const ChannelAssignment& assignment,
                       const FiberParams& fiber, double length_km, double b_q_ghz) {
  assignment.validate(grid);
  double total = 0.0;
  for (const auto& c : assignment.classical) {
    total += dbm_to_watt(c.power_dbm) *
             unit_slot_spurs(grid, c.slot, assignment.q_slot, fiber, length_km, b_q_ghz);
  }
  return total;
}

PlacementSweep placement_sweep(const WdmGrid& grid, const FiberParams& fiber, double length_km,
                               double p_per_channel_dbm, double b_q_ghz) {
  if (grid.n_slots < 2) throw InvalidInput("grid n_slots must be >= 2");
  PlacementSweep sweep{};
  sweep.points.reserve(grid.n_slots);
  for (int q = 0; q < grid.n_slots; ++q) {
    ChannelAssignment a{q, {}};
    for (int s = 0; s < grid.n_slots; ++s) {
      if (s != q) a.classical.push_back({s, p_per_channel_dbm});
    }
    sweep.points.push_back(
        {q, grid.slot_freq_thz(q), aggregate_spurs(grid, a, fiber, length_km, b_q_ghz)});
  }
  sweep.argmin_slot = std::min_element(sweep.points.begin(), sweep.points.end(),
                                       [](const auto& x, const auto& y) {
                                         return x.spurs_w < y.spurs_w;
                                       })
                          ->q_slot;
  return sweep;
}

std::vector<int> qawa_order(const WdmGrid& grid, int q_slot, const FiberParams& fiber,
                            double length_km, double b_q_ghz) {
  const auto unit = slot_contributions(grid, q_slot, fiber, length_km, b_q_ghz);
  std::vector<int> order = first_fit_order(grid, q_slot);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return unit[x] < unit[y]; });
  return order;
}

std::vector<int> first_fit_order(const WdmGrid& grid, int q_slot) {
  if (!grid.contains(q_slot)) throw InvalidInput("quantum slot outside grid");
  std::vector<int> order;
  order.reserve(grid.n_slots - 1);
  for (int s = 0; s < grid.n_slots; ++s) {
    if (s != q_slot) order.push_back(s);
  }
  return order;
}

}  // namespace qaplan
