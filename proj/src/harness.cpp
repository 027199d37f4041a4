#include "relocate/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "relocate/tgraph.hpp"

namespace relocate {
namespace {

Workspace workspace_of(const InstanceConfig& cfg) {
  Workspace w;
  w.length = cfg.length;
  w.width = cfg.width;
  w.robot_home = {0.5 * cfg.length, -0.10};
  w.robot_radius = cfg.robot_radius;
  w.safety_margin = cfg.safety_margin;
  return w;
}

void check(const InstanceConfig& cfg) {
  if (cfg.n_objects < 1) throw ConfigError("instance: n_objects must be >= 1");
  if (!(cfg.diameter_min > 0.0) || cfg.diameter_max < cfg.diameter_min) {
    throw ConfigError("instance: bad diameter range");
  }
  if (!(cfg.height_min > 0.0) || cfg.height_max < cfg.height_min) {
    throw ConfigError("instance: bad height range");
  }
  if (cfg.hidden_fraction < 0.0 || cfg.hidden_fraction >= 1.0) {
    throw ConfigError("instance: hidden_fraction must be in [0, 1)");
  }
  if (cfg.max_attempts < 1) throw ConfigError("instance: max_attempts must be >= 1");
}

class Sampler {
 public:
  Sampler(const InstanceConfig& cfg, const Workspace& w)
      : cfg_(cfg), w_(w), rng_(cfg.seed) {
    clearance_ = std::max(cfg.wall_clearance, 0.5 * cfg.diameter_max);
    if (2.0 * clearance_ >= w.length || 2.0 * clearance_ >= w.width) {
      throw ConfigError("instance: wall clearance leaves no room for objects");
    }
  }

  ObjectSpec draw(int id) {
    std::uniform_real_distribution<double> diam(cfg_.diameter_min, cfg_.diameter_max);
    std::uniform_real_distribution<double> height(cfg_.height_min, cfg_.height_max);
    std::uniform_real_distribution<double> x(clearance_, w_.length - clearance_);
    std::uniform_real_distribution<double> y(clearance_, w_.width - clearance_);
    ObjectSpec o;
    o.id = id;
    o.radius = 0.5 * diam(rng_);
    o.height = height(rng_);
    o.center = {x(rng_), y(rng_)};
    return o;
  }

  /// Fresh pose for `o` that overlaps nothing in `placed`; false after the
  /// retry budget runs out.
  bool place(ObjectSpec& o, const std::vector<ObjectSpec>& placed, int tries) {
    std::uniform_real_distribution<double> x(clearance_, w_.length - clearance_);
    std::uniform_real_distribution<double> y(clearance_, w_.width - clearance_);
    for (int t = 0; t < tries; ++t) {
      o.center = {x(rng_), y(rng_)};
      const bool clash = std::any_of(placed.begin(), placed.end(), [&](const ObjectSpec& p) {
        return disc_overlaps(o.footprint(), p.footprint());
      });
      if (!clash) return true;
    }
    return false;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  const InstanceConfig& cfg_;
  const Workspace& w_;
  std::mt19937_64 rng_;
  double clearance_ = 0.0;
};

constexpr int kPlacementTries = 2000;

bool place_visible(Sampler& s, std::vector<ObjectSpec>& objs, int count) {
  for (int i = 0; i < count; ++i) {
    ObjectSpec o = s.draw(static_cast<int>(objs.size()));
    if (!s.place(o, objs, kPlacementTries)) return false;
    objs.push_back(o);
  }
  return true;
}

// Like place_visible, but every object placed so far must stay in view.
bool place_in_view(Sampler& s, std::vector<ObjectSpec>& objs, int count,
                   const CameraModel& cam, const Workspace& w) {
  for (int i = 0; i < count; ++i) {
    ObjectSpec o = s.draw(static_cast<int>(objs.size()));
    bool placed = false;
    for (int t = 0; t < kPlacementTries && !placed; ++t) {
      if (!s.place(o, objs, kPlacementTries)) return false;
      objs.push_back(o);
      placed = detected_objects(objs, cam, w).size() == objs.size();
      if (!placed) objs.pop_back();
    }
    if (!placed) return false;
  }
  return true;
}

// Places one object that the camera cannot see and whose arrival leaves the
// detected set equal to `expect_seen`.
bool place_hidden(Sampler& s, std::vector<ObjectSpec>& objs,
                  const std::set<int>& expect_seen, const CameraModel& cam,
                  const Workspace& w) {
  ObjectSpec o = s.draw(static_cast<int>(objs.size()));
  o.hidden = true;
  for (int t = 0; t < kPlacementTries; ++t) {
    if (!s.place(o, objs, kPlacementTries)) return false;
    objs.push_back(o);
    if (detected_objects(objs, cam, w) == expect_seen) return true;
    objs.pop_back();
  }
  return false;
}

// Objects connected to the robot node.
std::set<int> reachable(const TGraph& g) {
  std::set<int> seen{kRobotNode};
  std::vector<int> stack{kRobotNode};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : g.neighbors(u)) {
      if (seen.insert(v).second) stack.push_back(v);
    }
  }
  seen.erase(kRobotNode);
  return seen;
}

// Visible objects that may serve as the target.
std::vector<int> target_candidates(const InstanceConfig& cfg,
                                   const std::vector<ObjectSpec>& objs,
                                   const std::set<int>& seen,
                                   const Workspace& w) {
  std::optional<TGraph> full;
  if (cfg.require_reachable_target) full = gen_graph(objs, w, cfg.resolution);
  std::optional<TGraph> known_graph;
  if (cfg.require_blocked_target && cfg.n_objects >= 2) {
    std::vector<ObjectSpec> known;
    for (const ObjectSpec& o : objs) {
      if (seen.contains(o.id)) known.push_back(o);
    }
    known_graph = gen_graph(known, w, cfg.resolution);
  }
  const std::set<int> connected = full ? reachable(*full) : std::set<int>{};
  std::vector<int> out;
  for (int id : seen) {
    if (full && !connected.contains(id)) continue;
    if (known_graph && known_graph->has_edge(kRobotNode, id)) continue;
    out.push_back(id);
  }
  return out;
}

std::optional<Scenario> attempt(const InstanceConfig& cfg, const Workspace& w,
                                Sampler& s) {
  const int n = cfg.n_objects;
  std::vector<ObjectSpec> objs;
  std::set<int> seen;

  switch (cfg.scenario_case) {
    case Case::I: {
      if (!place_visible(s, objs, n)) return std::nullopt;
      for (const ObjectSpec& o : objs) seen.insert(o.id);
      break;
    }
    case Case::II: {
      const int hidden = hidden_count(cfg);
      if (!place_in_view(s, objs, n - hidden, cfg.camera, w)) return std::nullopt;
      for (const ObjectSpec& o : objs) seen.insert(o.id);
      for (int h = 0; h < hidden; ++h) {
        if (!place_hidden(s, objs, seen, cfg.camera, w)) return std::nullopt;
      }
      break;
    }
    case Case::III: {
      if (!place_visible(s, objs, n - 1)) return std::nullopt;
      seen = detected_objects(objs, cfg.camera, w);
      if (!place_hidden(s, objs, seen, cfg.camera, w)) return std::nullopt;
      objs.back().is_target = true;
      if (cfg.require_reachable_target &&
          !reachable(gen_graph(objs, w, cfg.resolution)).contains(objs.back().id)) {
        return std::nullopt;
      }
      break;
    }
  }

  if (cfg.scenario_case != Case::III) {
    const std::vector<int> pool = target_candidates(cfg, objs, seen, w);
    if (pool.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    objs[pool[pick(s.rng())]].is_target = true;
  }

  // Every other object hidden at t=0 is flagged too (Case III may shadow
  // more than the target).
  for (ObjectSpec& o : objs) o.hidden = !seen.contains(o.id);

  Scenario sc;
  sc.workspace = w;
  sc.camera = cfg.camera;
  sc.scenario_case = cfg.scenario_case;
  sc.objects = std::move(objs);
  return sc;
}

std::string upper_case(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string lower_case(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sample standard deviation; 0 with fewer than two samples.
double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Case c) {
  switch (c) {
    case Case::I: return "I";
    case Case::II: return "II";
    case Case::III: return "III";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Proposed: return "proposed";
    case Method::Distance: return "distance";
    case Method::Vfh: return "vfh";
  }
  return "?";
}

Case parse_case(const std::string& s) {
  const std::string u = upper_case(s);
  if (u == "I" || u == "1") return Case::I;
  if (u == "II" || u == "2") return Case::II;
  if (u == "III" || u == "3") return Case::III;
  throw std::invalid_argument("unknown case '" + s + "' (expected I, II or III)");
}

Method parse_method(const std::string& s) {
  const std::string l = lower_case(s);
  if (l == "proposed") return Method::Proposed;
  if (l == "distance") return Method::Distance;
  if (l == "vfh" || l == "vfh+") return Method::Vfh;
  throw std::invalid_argument("unknown method '" + s +
                              "' (expected proposed, distance or vfh)");
}

WorldState Scenario::world() const {
  return WorldState(objects, camera,
                    scenario_case == Case::I ? Sensing::Full : Sensing::Camera,
                    workspace);
}

int hidden_count(const InstanceConfig& cfg) {
  return static_cast<int>(std::ceil(cfg.hidden_fraction * cfg.n_objects - 1e-9));
}

Scenario generate_instance(const InstanceConfig& cfg) {
  check(cfg);
  const Workspace w = workspace_of(cfg);
  validate(w);
  if (cfg.scenario_case == Case::II && hidden_count(cfg) >= cfg.n_objects) {
    throw ConfigError("instance: Case II needs at least one visible object");
  }
  if (cfg.scenario_case == Case::III && cfg.n_objects < 2) {
    throw ConfigError("instance: Case III needs an occluder besides the target");
  }

  Sampler s(cfg, w);
  for (int a = 0; a < cfg.max_attempts; ++a) {
    if (auto sc = attempt(cfg, w, s)) return *std::move(sc);
  }
  throw GenerationError("instance: no valid placement after " +
                        std::to_string(cfg.max_attempts) + " attempts (N=" +
                        std::to_string(cfg.n_objects) + ", case " +
                        to_string(cfg.scenario_case) + ")");
}

RunMetrics run_episode(WorldState world, const Workspace& w, Method method,
                       MotionOracle& oracle, const EpisodeOptions& opts) {
  RunMetrics m;
  PlannerOptions po;
  po.resolution = opts.resolution;
  po.deadline = Deadline(opts.budget_s);
  po.log = &m.events;

  const auto start = std::chrono::steady_clock::now();
  PlanOutcome out;
  switch (method) {
    case Method::Proposed: out = reloc_planner(world, oracle, w, po); break;
    case Method::Distance: out = distance_planner(world, oracle, w, opts.distance, po); break;
    case Method::Vfh: out = vfh_local_planner(world, oracle, w, opts.vfh, po); break;
  }
  const auto stop = std::chrono::steady_clock::now();

  m.success = out.status == Status::Done;
  m.timed_out = out.timed_out;
  m.relocated = out.relocated;
  m.relocated_count = static_cast<int>(out.relocated.size());
  m.replans = out.replans;
  m.reason = out.timed_out ? "timeout" : out.reason;
  m.time_total_s = std::chrono::duration<double>(stop - start).count();
  m.time_per_action_s = m.relocated_count > 0
                            ? m.time_total_s / m.relocated_count
                            : m.time_total_s;
  return m;
}

OracleSpec parse_oracle_spec(const std::string& text) {
  OracleSpec spec;
  if (text == "always") {
    spec.kind = OracleSpec::Kind::Always;
  } else if (text == "disc2d") {
    spec.kind = OracleSpec::Kind::Disc2d;
  } else if (text.starts_with("fault:")) {
    spec.kind = OracleSpec::Kind::Fault;
    spec.table = load_fault_table(text.substr(6));
  } else if (text.starts_with("randfault:")) {
    spec.kind = OracleSpec::Kind::RandomFault;
    const std::string p = text.substr(10);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size() || p.empty() || v < 0.0 || v > 1.0) {
      throw std::invalid_argument("randfault probability must be in [0, 1]: '" + p + "'");
    }
    spec.fault_probability = v;
  } else {
    throw std::invalid_argument("unknown oracle '" + text +
                                "' (expected always, disc2d, fault:<file> or randfault:<p>)");
  }
  return spec;
}

std::string to_string(const OracleSpec& spec) {
  switch (spec.kind) {
    case OracleSpec::Kind::Always: return "always";
    case OracleSpec::Kind::Disc2d: return "disc2d";
    case OracleSpec::Kind::Fault: {
      std::ostringstream os;
      os << "fault[";
      bool first = true;
      for (const auto& [id, e] : spec.table) {
        if (!first) os << ' ';
        first = false;
        os << id << ':' << (e.always ? std::string("always") : std::to_string(e.fail_count));
      }
      os << ']';
      return os.str();
    }
    case OracleSpec::Kind::RandomFault: return "randfault:" + num(spec.fault_probability);
  }
  return "?";
}

std::unique_ptr<MotionOracle> make_oracle(const OracleSpec& spec,
                                          std::uint64_t seed,
                                          double resolution) {
  switch (spec.kind) {
    case OracleSpec::Kind::Always: return std::make_unique<AlwaysSucceed>();
    case OracleSpec::Kind::Disc2d: return std::make_unique<Disc2dOracle>(resolution);
    case OracleSpec::Kind::Fault: return std::make_unique<ScriptedFault>(spec.table);
    case OracleSpec::Kind::RandomFault:
      return std::make_unique<RandomFirstFault>(
          spec.fault_probability, seed, std::make_unique<Disc2dOracle>(resolution));
  }
  throw std::invalid_argument("unknown oracle kind");
}

BatchResult run_batch(const BatchSpec& spec) {
  struct Job {
    std::size_t scene;
    Method method;
  };
  std::vector<InstanceConfig> instances;
  std::vector<Job> jobs;
  for (const InstanceConfig& base : spec.configs) {
    for (int r = 0; r < spec.repetitions; ++r) {
      InstanceConfig cfg = base;
      cfg.seed = base.seed + static_cast<std::uint64_t>(r);
      instances.push_back(cfg);
      for (Method m : spec.methods) jobs.push_back({instances.size() - 1, m});
    }
  }

  BatchResult result;
  result.episodes.resize(jobs.size());
  // Methods of one repetition share the instance; generate it once.
  std::vector<Scenario> scenes;
  for (const InstanceConfig& cfg : instances) scenes.push_back(generate_instance(cfg));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      const InstanceConfig& cfg = instances[j.scene];
      const Scenario& sc = scenes[j.scene];
      auto oracle = make_oracle(spec.oracle, cfg.seed, spec.episode.resolution);
      EpisodeRecord& rec = result.episodes[i];
      rec.episode_id = static_cast<int>(i);
      rec.method = j.method;
      rec.scenario_case = cfg.scenario_case;
      rec.n_objects = cfg.n_objects;
      rec.seed = cfg.seed;
      rec.metrics = run_episode(sc.world(), sc.workspace, j.method, *oracle, spec.episode);
    }
  };
  const int n_workers = std::max(1, std::min<int>(spec.workers, static_cast<int>(jobs.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  result.table = aggregate(result.episodes);
  return result;
}

std::vector<AggregateRow> aggregate(const std::vector<EpisodeRecord>& episodes) {
  std::vector<const EpisodeRecord*> sorted;
  for (const EpisodeRecord& e : episodes) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const EpisodeRecord* a, const EpisodeRecord* b) {
    return a->episode_id < b->episode_id;
  });

  struct Acc {
    int episodes = 0;
    std::vector<double> relocated, per_action, replans, failed;
  };
  std::map<std::tuple<int, int, int>, Acc> groups;
  for (const EpisodeRecord* e : sorted) {
    Acc& a = groups[{static_cast<int>(e->method), static_cast<int>(e->scenario_case),
                     e->n_objects}];
    ++a.episodes;
    a.replans.push_back(e->metrics.replans);
    if (e->metrics.success) {
      a.relocated.push_back(e->metrics.relocated_count);
      a.per_action.push_back(e->metrics.time_per_action_s);
    } else {
      a.failed.push_back(e->metrics.relocated_count);
    }
  }

  std::vector<AggregateRow> rows;
  for (const auto& [key, a] : groups) {
    AggregateRow r;
    r.method = static_cast<Method>(std::get<0>(key));
    r.scenario_case = static_cast<Case>(std::get<1>(key));
    r.n_objects = std::get<2>(key);
    r.episodes = a.episodes;
    r.successes = static_cast<int>(a.relocated.size());
    r.success_rate = static_cast<double>(r.successes) / a.episodes;
    r.relocated_mean = mean(a.relocated);
    r.relocated_std = stddev(a.relocated);
    r.time_per_action_mean = mean(a.per_action);
    r.time_per_action_std = stddev(a.per_action);
    r.replans_mean = mean(a.replans);
    r.failed_relocated_mean = mean(a.failed);
    rows.push_back(r);
  }
  return rows;
}

std::string metrics_csv(const std::vector<EpisodeRecord>& episodes) {
  std::ostringstream os;
  os << "method,case,N,seed,success,relocated,replans,time_total_s,time_per_action_s\n";
  for (const EpisodeRecord& e : episodes) {
    const RunMetrics& m = e.metrics;
    os << to_string(e.method) << ',' << to_string(e.scenario_case) << ','
       << e.n_objects << ',' << e.seed << ',' << (m.success ? 1 : 0) << ','
       << m.relocated_count << ',' << m.replans << ',' << num(m.time_total_s)
       << ',' << num(m.time_per_action_s) << '\n';
  }
  return os.str();
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream os;
  os << "method,case,N,episodes,successes,success_rate,relocated_mean,"
        "relocated_std,time_per_action_mean_s,time_per_action_std_s,"
        "replans_mean,failed_relocated_mean\n";
  for (const AggregateRow& r : rows) {
    os << to_string(r.method) << ',' << to_string(r.scenario_case) << ','
       << r.n_objects << ',' << r.episodes << ',' << r.successes << ','
       << num(r.success_rate) << ',' << num(r.relocated_mean) << ','
       << num(r.relocated_std) << ',' << num(r.time_per_action_mean) << ','
       << num(r.time_per_action_std) << ',' << num(r.replans_mean) << ','
       << num(r.failed_relocated_mean) << '\n';
  }
  return os.str();
}

}  // namespace relocate
