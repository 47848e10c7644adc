#include "v2g/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "v2g/errors.hpp"
#include "v2g/rng.hpp"

namespace v2g {

using nlohmann::json;

namespace {

// Reads keys out of one JSON object and remembers which were consumed, so
// leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_or_root() + ": expected an object");
  }

  ~Section() = default;
  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  std::string key(const std::string& name) const {
    return path_.empty() ? name : path_ + "." + name;
  }

  const json* find(const std::string& name) {
    seen_.insert(name);
    auto it = node_.find(name);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const std::string& name, double& out) {
    if (const json* v = find(name)) {
      if (!v->is_number()) throw ConfigError(key(name) + ": expected a number");
      out = v->get<double>();
    }
  }

  void count(const std::string& name, std::size_t& out) {
    if (const json* v = find(name)) {
      if (!v->is_number_unsigned()) {
        throw ConfigError(key(name) + ": expected a non-negative integer");
      }
      out = v->get<std::size_t>();
    }
  }

  void seed(const std::string& name, std::uint64_t& out) {
    if (const json* v = find(name)) {
      if (!v->is_number_unsigned()) {
        throw ConfigError(key(name) + ": expected a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void flag(const std::string& name, bool& out) {
    if (const json* v = find(name)) {
      if (!v->is_boolean()) throw ConfigError(key(name) + ": expected true or false");
      out = v->get<bool>();
    }
  }

  void text(const std::string& name, std::string& out) {
    if (const json* v = find(name)) {
      if (!v->is_string()) throw ConfigError(key(name) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void range(const std::string& name, Range& out) {
    if (const json* v = find(name)) {
      if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
        throw ConfigError(key(name) + ": expected [lower, upper]");
      }
      out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
      if (out.lo > out.hi) {
        throw ConfigError(key(name) + ": lower bound " + std::to_string(out.lo) +
                          " exceeds upper bound " + std::to_string(out.hi));
      }
    }
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(key(it.key()) + ": unknown key");
    }
  }

 private:
  std::string path_or_root() const { return path_.empty() ? "config" : path_; }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

TopologyPolicy parse_policy(const std::string& s, const std::string& key) {
  if (s == "one_random_neighbor") return TopologyPolicy::one_random_neighbor;
  if (s == "ring") return TopologyPolicy::ring;
  if (s == "custom") return TopologyPolicy::custom;
  throw ConfigError(key + ": unknown policy '" + s + "'");
}

std::string policy_name(TopologyPolicy p) {
  switch (p) {
    case TopologyPolicy::one_random_neighbor: return "one_random_neighbor";
    case TopologyPolicy::ring: return "ring";
    case TopologyPolicy::custom: return "custom";
  }
  return "one_random_neighbor";
}

void read_fleet(const json& node, ScenarioConfig& c) {
  Section s(node, "fleet");
  s.count("count", c.ev_count);
  s.range("soc_init", c.fleet.soc_init);
  s.range("soc_min", c.fleet.soc_min);
  s.range("capacity_kwh", c.fleet.capacity_kwh);
  s.range("eta", c.fleet.eta);
  s.number("rate_min_kw", c.fleet.rate_min_kw);
  s.number("rate_max_kw", c.fleet.rate_max_kw);
  s.number("km_per_kwh", c.km_per_kwh);
  std::string basis = c.distance_basis == DistanceBasis::soc_min ? "soc_min" : "soc_initial";
  s.text("distance_basis", basis);
  if (basis == "soc_min") {
    c.distance_basis = DistanceBasis::soc_min;
  } else if (basis == "soc_initial") {
    c.distance_basis = DistanceBasis::soc_initial;
  } else {
    throw ConfigError(s.key("distance_basis") + ": expected soc_min or soc_initial");
  }
  s.finish();
}

void read_cost(const json& node, ScenarioConfig& c) {
  Section s(node, "cost");
  s.number("price", c.cost.price);
  if (const json* ev = s.find("ev")) {
    Section e(*ev, "cost.ev");
    e.range("alpha", c.cost.alpha);
    e.range("beta", c.cost.beta);
    e.range("gamma", c.cost.gamma);
    e.range("other", c.cost.other);
    e.finish();
  }
  if (const json* agg = s.find("aggregator")) {
    Section a(*agg, "cost.aggregator");
    a.number("a", c.cost.gen_a);
    a.number("b", c.cost.gen_b);
    a.number("c", c.cost.gen_c);
    a.number("omega", c.cost.omega);
    a.finish();
  }
  s.finish();
}

void read_optimizer(const json& node, ScenarioConfig& c) {
  Section s(node, "optimizer");
  s.count("whales", c.optimizer.whales);
  s.count("k_max", c.optimizer.k_max);
  s.flag("shuffle", c.optimizer.shuffle);
  s.range("split_fraction", c.optimizer.split_fraction);
  s.flag("warm_start", c.optimizer.warm_start);
  s.flag("record_timing", c.optimizer.record_timing);
  s.finish();
}

void read_topology(const json& node, ScenarioConfig& c) {
  Section s(node, "topology");
  std::string policy = policy_name(c.optimizer.topology);
  s.text("policy", policy);
  c.optimizer.topology = parse_policy(policy, s.key("policy"));
  s.flag("dynamic", c.optimizer.dynamic_topology);
  s.number("drop_probability", c.optimizer.link.drop_probability);
  if (const json* edges = s.find("edges")) {
    if (!edges->is_array()) throw ConfigError(s.key("edges") + ": expected a list");
    c.optimizer.custom_edges.clear();
    for (const auto& e : *edges) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw ConfigError(s.key("edges") + ": expected [\"from\", \"to\"] pairs");
      }
      try {
        c.optimizer.custom_edges.push_back(
            {parse_agent_id(e[0].get<std::string>()), parse_agent_id(e[1].get<std::string>())});
      } catch (const std::exception& ex) {
        throw ConfigError(s.key("edges") + ": " + ex.what());
      }
    }
  }
  s.finish();
}

void read_simulation(const json& node, ScenarioConfig& c) {
  Section s(node, "simulation");
  s.number("dt_h", c.dt_h);
  s.number("horizon_h", c.horizon_h);
  if (const json* events = s.find("events")) {
    if (!events->is_array()) throw ConfigError(s.key("events") + ": expected a list");
    c.events.clear();
    for (std::size_t i = 0; i < events->size(); ++i) {
      Section e((*events)[i], "simulation.events[" + std::to_string(i) + "]");
      EventConfig ev;
      e.number("t_h", ev.t_h);
      if (const json* ids = e.find("depart")) {
        if (!ids->is_array()) throw ConfigError(e.key("depart") + ": expected a list of ids");
        for (const auto& id : *ids) {
          if (!id.is_number_unsigned()) throw ConfigError(e.key("depart") + ": bad id");
          ev.depart.push_back(id.get<std::size_t>());
        }
      }
      std::size_t keep = 0;
      if (e.find("keep_first") != nullptr) {
        e.count("keep_first", keep);
        ev.keep_first = keep;
      }
      e.finish();
      c.events.push_back(std::move(ev));
    }
  }
  s.finish();
}

void read_baselines(const json& node, ScenarioConfig& c) {
  Section s(node, "baselines");
  s.count("population", c.baseline_population);
  s.count("k_max", c.baseline_k_max);
  s.number("penalty_cap", c.penalty.cap);
  s.number("penalty_tolerance_kw", c.penalty.tolerance_kw);
  s.number("penalty_scale_kw", c.penalty.spread_scale_kw);
  s.finish();
}

void read_stats(const json& node, ScenarioConfig& c) {
  Section s(node, "stats");
  s.count("runs", c.runs);
  s.count("threads", c.threads);
  s.finish();
}

void read_output(const json& node, ScenarioConfig& c) {
  Section s(node, "output");
  s.text("dir", c.output_dir);
  s.finish();
}

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

}  // namespace

void ScenarioConfig::validate() const {
  fleet.validate();
  cost.validate();
  if (ev_count == 0) throw ConfigError("fleet.count: must be >= 1");
  if (!(km_per_kwh > 0.0)) throw ConfigError("fleet.km_per_kwh: must be > 0");
  if (optimizer.whales == 0) throw ConfigError("optimizer.whales: must be >= 1");
  if (optimizer.k_max == 0) throw ConfigError("optimizer.k_max: must be >= 1");
  if (optimizer.split_fraction.lo < 0.0 || optimizer.split_fraction.hi > 1.0) {
    throw ConfigError("optimizer.split_fraction: must lie within [0, 1]");
  }
  if (optimizer.link.drop_probability < 0.0 || optimizer.link.drop_probability > 1.0) {
    throw ConfigError("topology.drop_probability: must lie within [0, 1]");
  }
  if (optimizer.topology == TopologyPolicy::custom && optimizer.custom_edges.empty()) {
    throw ConfigError("topology.edges: required by the custom policy");
  }
  if (!(dt_h > 0.0)) throw ConfigError("simulation.dt_h: must be > 0");
  if (!(horizon_h > 0.0)) throw ConfigError("simulation.horizon_h: must be > 0");
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string key = "simulation.events[" + std::to_string(i) + "]";
    if (events[i].t_h < 0.0) throw ConfigError(key + ".t_h: must be >= 0");
    for (std::size_t id : events[i].depart) {
      if (id >= ev_count) throw ConfigError(key + ".depart: id " + std::to_string(id) + " out of range");
    }
  }
  if (baseline_population < 3) throw ConfigError("baselines.population: must be >= 3");
  if (baseline_k_max == 0) throw ConfigError("baselines.k_max: must be >= 1");
  if (!(penalty.cap > 0.0)) throw ConfigError("baselines.penalty_cap: must be > 0");
  if (penalty.tolerance_kw < 0.0) throw ConfigError("baselines.penalty_tolerance_kw: must be >= 0");
  if (runs < 2) throw ConfigError("stats.runs: must be >= 2");
  if (threads == 0) throw ConfigError("stats.threads: must be >= 1");
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig c;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return c;

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  Section s(root, "");
  if (const json* v = s.find("schema_version")) {
    if (!v->is_number_integer() || v->get<int>() != kConfigSchemaVersion) {
      throw ConfigError("schema_version: expected " + std::to_string(kConfigSchemaVersion));
    }
  }
  s.seed("seed", c.seed);
  if (const json* v = s.find("fleet")) read_fleet(*v, c);
  if (const json* v = s.find("cost")) read_cost(*v, c);
  if (const json* v = s.find("optimizer")) read_optimizer(*v, c);
  if (const json* v = s.find("topology")) read_topology(*v, c);
  if (const json* v = s.find("simulation")) read_simulation(*v, c);
  if (const json* v = s.find("baselines")) read_baselines(*v, c);
  if (const json* v = s.find("stats")) read_stats(*v, c);
  if (const json* v = s.find("output")) read_output(*v, c);
  s.finish();
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const ScenarioConfig& c) {
  json edges = json::array();
  for (const auto& e : c.optimizer.custom_edges) {
    edges.push_back(json::array({to_string(e.from), to_string(e.to)}));
  }
  json events = json::array();
  for (const auto& e : c.events) {
    json ev = {{"t_h", e.t_h}};
    if (!e.depart.empty()) ev["depart"] = e.depart;
    if (e.keep_first) ev["keep_first"] = *e.keep_first;
    events.push_back(ev);
  }
  json root = {
      {"schema_version", kConfigSchemaVersion},
      {"seed", c.seed},
      {"fleet",
       {{"count", c.ev_count},
        {"soc_init", range_json(c.fleet.soc_init)},
        {"soc_min", range_json(c.fleet.soc_min)},
        {"capacity_kwh", range_json(c.fleet.capacity_kwh)},
        {"eta", range_json(c.fleet.eta)},
        {"rate_min_kw", c.fleet.rate_min_kw},
        {"rate_max_kw", c.fleet.rate_max_kw},
        {"km_per_kwh", c.km_per_kwh},
        {"distance_basis",
         c.distance_basis == DistanceBasis::soc_min ? "soc_min" : "soc_initial"}}},
      {"cost",
       {{"price", c.cost.price},
        {"ev",
         {{"alpha", range_json(c.cost.alpha)},
          {"beta", range_json(c.cost.beta)},
          {"gamma", range_json(c.cost.gamma)},
          {"other", range_json(c.cost.other)}}},
        {"aggregator",
         {{"a", c.cost.gen_a}, {"b", c.cost.gen_b}, {"c", c.cost.gen_c}, {"omega", c.cost.omega}}}}},
      {"optimizer",
       {{"whales", c.optimizer.whales},
        {"k_max", c.optimizer.k_max},
        {"shuffle", c.optimizer.shuffle},
        {"split_fraction", range_json(c.optimizer.split_fraction)},
        {"warm_start", c.optimizer.warm_start},
        {"record_timing", c.optimizer.record_timing}}},
      {"topology",
       {{"policy", policy_name(c.optimizer.topology)},
        {"dynamic", c.optimizer.dynamic_topology},
        {"drop_probability", c.optimizer.link.drop_probability},
        {"edges", edges}}},
      {"simulation", {{"dt_h", c.dt_h}, {"horizon_h", c.horizon_h}, {"events", events}}},
      {"baselines",
       {{"population", c.baseline_population},
        {"k_max", c.baseline_k_max},
        {"penalty_cap", c.penalty.cap},
        {"penalty_tolerance_kw", c.penalty.tolerance_kw},
        {"penalty_scale_kw", c.penalty.spread_scale_kw}}},
      {"stats", {{"runs", c.runs}, {"threads", c.threads}}},
      {"output", {{"dir", c.output_dir}}},
  };
  return root.dump(2) + "\n";
}

Scenario build_scenario(const ScenarioConfig& config, std::optional<std::uint64_t> seed) {
  config.validate();
  const std::uint64_t s = seed.value_or(config.seed);
  Scenario out;
  out.fleet = sample_fleet(config.ev_count, derive_seed(s, 0xF1EE7), config.fleet);
  std::vector<double> eta;
  eta.reserve(out.fleet.evs.size());
  for (const auto& ev : out.fleet.evs) eta.push_back(ev.eta);
  out.costs = sample_cost_model(eta, config.cost, derive_seed(s, 0xC057));
  out.params.optimization = config.optimizer;
  out.params.dt_h = config.dt_h;
  out.params.horizon_h = config.horizon_h;
  for (const auto& e : config.events) {
    FleetEvent fe;
    fe.t_h = e.t_h;
    fe.depart_ids = e.depart;
    if (e.keep_first) {
      for (std::size_t id = *e.keep_first; id < config.ev_count; ++id) fe.depart_ids.push_back(id);
    }
    out.params.events.push_back(std::move(fe));
  }
  return out;
}

}  // namespace v2g
