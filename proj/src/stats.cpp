#include "v2g/stats.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "v2g/errors.hpp"
#include "v2g/format.hpp"
#include "v2g/rng.hpp"

namespace v2g {

namespace {

constexpr const char* kStatsSchema = "# v2g-stats v1";
constexpr const char* kSamplesSchema = "# v2g-samples v1";
constexpr const char* kSamplesHeader = "value,run,seed,rate_kw,total,time_s";

}  // namespace

std::string to_string(SweepAxis axis) { return axis == SweepAxis::k_max ? "k_max" : "whales"; }

std::uint64_t run_seed(std::uint64_t base, std::size_t run) {
  return derive_seed(derive_seed(base, 0x5EED), run);
}

StatsRow summarize(SweepAxis axis, std::size_t value, std::span<const RunSample> samples) {
  if (samples.size() < 2) throw DomainError("summarize: at least two runs required");
  const auto n = static_cast<double>(samples.size());
  double rate_sum = 0.0;
  double time_sum = 0.0;
  for (const auto& s : samples) {
    rate_sum += s.rate_kw;
    time_sum += s.time_s;
  }
  const double mean = rate_sum / n;
  double sq = 0.0;
  for (const auto& s : samples) sq += (s.rate_kw - mean) * (s.rate_kw - mean);
  StatsRow row;
  row.axis = axis;
  row.value = value;
  row.mean_rate_kw = mean;
  row.std_rate_kw = std::sqrt(sq / (n - 1.0));
  row.mean_time_s = time_sum / n;
  row.runs = samples.size();
  return row;
}

StatsResult stats_harness(const ScenarioConfig& config, SweepAxis axis,
                          std::span<const std::size_t> values, std::size_t runs,
                          std::size_t threads) {
  if (runs < 2) throw DomainError("stats_harness: at least two runs required");
  if (values.empty()) throw DomainError("stats_harness: empty sweep");
  const Scenario scenario = build_scenario(config);

  StatsResult out;
  out.samples.resize(values.size() * runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < out.samples.size(); job = next++) {
      const std::size_t point = job / runs;
      const std::size_t run = job % runs;
      OptimizationParams params = config.optimizer;
      if (axis == SweepAxis::k_max) {
        params.k_max = values[point];
      } else {
        params.whales = values[point];
      }
      RunSample& s = out.samples[job];
      s.value = values[point];
      s.run = run;
      s.seed = run_seed(config.seed, run);
      const auto started = std::chrono::steady_clock::now();
      const OptimizationResult r = run_optimization(scenario.fleet, scenario.costs, params, s.seed);
      s.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      s.rate_kw = r.best_rate_kw;
      s.total = r.best_total.to_double();
    }
  };

  const std::size_t n_threads = std::max<std::size_t>(1, threads);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t point = 0; point < values.size(); ++point) {
    out.rows.push_back(summarize(
        axis, values[point], std::span(out.samples).subspan(point * runs, runs)));
  }
  return out;
}

void write_stats_csv(std::ostream& out, std::span<const StatsRow> rows) {
  out << kStatsSchema << '\n' << "axis,value,mean_rate_kw,std_rate_kw,mean_time_s,runs\n";
  for (const auto& r : rows) {
    out << to_string(r.axis) << ',' << r.value << ',' << format_double(r.mean_rate_kw) << ','
        << format_double(r.std_rate_kw) << ',' << format_double(r.mean_time_s) << ',' << r.runs
        << '\n';
  }
}

void write_samples_csv(std::ostream& out, std::span<const RunSample> samples) {
  out << kSamplesSchema << '\n' << kSamplesHeader << '\n';
  for (const auto& s : samples) {
    out << s.value << ',' << s.run << ',' << s.seed << ',' << format_double(s.rate_kw) << ','
        << format_double(s.total) << ',' << format_double(s.time_s) << '\n';
  }
}

std::vector<RunSample> read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSamplesSchema) {
    throw DomainError("read_samples_csv: missing schema line");
  }
  if (!std::getline(in, line) || line != kSamplesHeader) {
    throw DomainError("read_samples_csv: unexpected header");
  }
  std::vector<RunSample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 6) throw DomainError("read_samples_csv: expected 6 fields: " + line);
    RunSample s;
    s.value = std::stoull(f[0]);
    s.run = std::stoull(f[1]);
    s.seed = std::stoull(f[2]);
    s.rate_kw = parse_double(f[3]);
    s.total = parse_double(f[4]);
    s.time_s = parse_double(f[5]);
    out.push_back(s);
  }
  return out;
}

}  // namespace v2g
