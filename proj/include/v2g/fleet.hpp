#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "v2g/range.hpp"

namespace v2g {

struct FleetConfig {
  Range soc_init{0.8, 0.9};
  Range soc_min{0.1, 0.2};
  Range capacity_kwh{15.0, 30.0};
  Range eta{1.0, 1.0};
  double rate_min_kw = 0.0;
  double rate_max_kw = 6.6;

  /// Throws ConfigError naming the first inverted or out-of-domain bound.
  void validate() const;
};

struct EvState {
  std::size_t id = 0;
  double capacity_kwh = 20.0;
  double soc = 0.85;
  double soc_initial = 0.85;
  double soc_min = 0.15;
  double rate_min_kw = 0.0;
  double rate_max_kw = 6.6;
  double eta = 1.0;
  bool departed = false;  ///< unplugged by a scenario event

  /// Boundary soc == soc_min stays available.
  bool available() const { return !departed && soc >= soc_min; }
};

struct Fleet {
  std::vector<EvState> evs;
  double time_h = 0.0;
};

/// Draws n EVs with independent uniform fields. Deterministic per seed.
Fleet sample_fleet(std::size_t n, std::uint64_t seed, const FleetConfig& config = {});

/// Ids of EVs with soc >= soc_min that have not departed, ascending.
std::vector<std::size_t> available_set(const Fleet& fleet);

/// Advances the fleet by dt hours at one common rate. Each available EV
/// loses rate*dt/capacity of charge (floored at zero); unavailable EVs are
/// untouched. Throws DomainError if dt <= 0 or the rate lies outside any
/// available EV's [rate_min, rate_max].
Fleet apply_discharge(const Fleet& fleet, double common_rate_kw, double dt_h);

/// Power delivered to the grid: rate times the efficiencies of the available
/// EVs, summed in ascending id order.
double grid_power(const Fleet& fleet, double common_rate_kw);

/// Marks the listed EVs as departed. Throws DomainError on an unknown id.
void depart(Fleet& fleet, std::span<const std::size_t> ids);

enum class DistanceBasis { soc_min, soc_initial };

/// Range (km) covered by the reserved energy: soc_min * capacity * km_per_kwh,
/// or the initial soc when basis == soc_initial.
double distance_home(const EvState& ev, double km_per_kwh,
                     DistanceBasis basis = DistanceBasis::soc_min);

/// Counts of distance_home in [0, w), [w, 2w), ... for every EV in the fleet.
std::vector<std::size_t> distance_histogram(const Fleet& fleet, double km_per_kwh,
                                            double bin_width_km = 10.0,
                                            DistanceBasis basis = DistanceBasis::soc_min);

/// Long-format snapshot rows "step,t_h,id,soc,available". Writes the header
/// when `step == 0`.
void write_fleet_snapshot(std::ostream& out, std::size_t step, const Fleet& fleet);

}  // namespace v2g
