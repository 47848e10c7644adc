#include "v2g/fleet.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "v2g/errors.hpp"
#include "v2g/format.hpp"
#include "v2g/rng.hpp"

namespace v2g {

namespace {

void check_range(const Range& r, const char* key, double floor, double ceil) {
  if (r.lo > r.hi) {
    throw ConfigError(std::string(key) + ": lower bound " + format_double(r.lo) +
                      " exceeds upper bound " + format_double(r.hi));
  }
  if (r.lo < floor || r.hi > ceil) {
    throw ConfigError(std::string(key) + ": bounds must lie within [" + format_double(floor) +
                      ", " + format_double(ceil) + "]");
  }
}

}  // namespace

void FleetConfig::validate() const {
  check_range(soc_init, "fleet.soc_init", 0.0, 1.0);
  check_range(soc_min, "fleet.soc_min", 0.0, 1.0);
  check_range(capacity_kwh, "fleet.capacity_kwh", 1e-9, 1e9);
  check_range(eta, "fleet.eta", 1e-9, 1.0);
  if (rate_min_kw < 0.0) throw ConfigError("fleet.rate_min_kw: must be >= 0");
  if (rate_min_kw > rate_max_kw) {
    throw ConfigError("fleet.rate_min_kw: exceeds fleet.rate_max_kw");
  }
  if (soc_min.hi > soc_init.lo) {
    // An EV could start below its own floor; the sampled fleet would then
    // violate soc_min <= soc.
    throw ConfigError("fleet.soc_min: upper bound exceeds fleet.soc_init lower bound");
  }
}

Fleet sample_fleet(std::size_t n, std::uint64_t seed, const FleetConfig& config) {
  if (n == 0) throw DomainError("sample_fleet: n must be >= 1");
  config.validate();
  Rng rng(seed);
  Fleet fleet;
  fleet.evs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    EvState ev;
    ev.id = i;
    ev.soc = rng.uniform(config.soc_init.lo, config.soc_init.hi);
    ev.soc_initial = ev.soc;
    ev.soc_min = rng.uniform(config.soc_min.lo, config.soc_min.hi);
    ev.capacity_kwh = rng.uniform(config.capacity_kwh.lo, config.capacity_kwh.hi);
    ev.eta = rng.uniform(config.eta.lo, config.eta.hi);
    ev.rate_min_kw = config.rate_min_kw;
    ev.rate_max_kw = config.rate_max_kw;
    fleet.evs.push_back(ev);
  }
  return fleet;
}

std::vector<std::size_t> available_set(const Fleet& fleet) {
  std::vector<std::size_t> ids;
  for (const auto& ev : fleet.evs) {
    if (ev.available()) ids.push_back(ev.id);
  }
  return ids;
}

Fleet apply_discharge(const Fleet& fleet, double common_rate_kw, double dt_h) {
  if (!(dt_h > 0.0)) throw DomainError("apply_discharge: dt must be > 0");
  Fleet next = fleet;
  for (auto& ev : next.evs) {
    if (!ev.available()) continue;
    if (common_rate_kw < ev.rate_min_kw || common_rate_kw > ev.rate_max_kw) {
      throw DomainError("apply_discharge: rate " + format_double(common_rate_kw) +
                        " kW outside bounds of EV " + std::to_string(ev.id));
    }
    ev.soc = std::max(0.0, ev.soc - common_rate_kw * dt_h / ev.capacity_kwh);
  }
  next.time_h = fleet.time_h + dt_h;
  return next;
}

double grid_power(const Fleet& fleet, double common_rate_kw) {
  double eta_sum = 0.0;
  for (const auto& ev : fleet.evs) {
    if (ev.available()) eta_sum += ev.eta;
  }
  return common_rate_kw * eta_sum;
}

void depart(Fleet& fleet, std::span<const std::size_t> ids) {
  for (std::size_t id : ids) {
    if (id >= fleet.evs.size()) {
      throw DomainError("depart: unknown EV id " + std::to_string(id));
    }
    fleet.evs[id].departed = true;
  }
}

double distance_home(const EvState& ev, double km_per_kwh, DistanceBasis basis) {
  if (!(km_per_kwh > 0.0)) throw DomainError("distance_home: km_per_kwh must be > 0");
  const double fraction = basis == DistanceBasis::soc_min ? ev.soc_min : ev.soc_initial;
  return fraction * ev.capacity_kwh * km_per_kwh;
}

std::vector<std::size_t> distance_histogram(const Fleet& fleet, double km_per_kwh,
                                            double bin_width_km, DistanceBasis basis) {
  if (!(bin_width_km > 0.0)) throw DomainError("distance_histogram: bin width must be > 0");
  std::vector<std::size_t> bins;
  for (const auto& ev : fleet.evs) {
    const auto bin =
        static_cast<std::size_t>(std::floor(distance_home(ev, km_per_kwh, basis) / bin_width_km));
    if (bin >= bins.size()) bins.resize(bin + 1, 0);
    ++bins[bin];
  }
  return bins;
}

void write_fleet_snapshot(std::ostream& out, std::size_t step, const Fleet& fleet) {
  if (step == 0) out << "step,t_h,id,soc,available\n";
  for (const auto& ev : fleet.evs) {
    out << step << ',' << format_double(fleet.time_h) << ',' << ev.id << ','
        << format_double(ev.soc) << ',' << (ev.available() ? 1 : 0) << '\n';
  }
}

}  // namespace v2g
