#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "relocate/baselines.hpp"
#include "relocate/motion.hpp"
#include "relocate/occlusion.hpp"
#include "relocate/planner.hpp"
#include "relocate/world.hpp"

namespace relocate {

/// I: everything known. II: some obstacles hidden, target visible.
/// III: target hidden.
enum class Case { I, II, III };
enum class Method { Proposed, Distance, Vfh };

std::string to_string(Case c);
std::string to_string(Method m);
/// Accept "I"/"II"/"III" (or 1/2/3) and "proposed"/"distance"/"vfh".
/// Throw std::invalid_argument otherwise.
Case parse_case(const std::string& s);
Method parse_method(const std::string& s);

/// Everything needed to rebuild an episode's initial world.
struct Scenario {
  Workspace workspace;
  CameraModel camera;
  Case scenario_case = Case::I;
  std::vector<ObjectSpec> objects;

  /// Case I worlds know every object; II and III see through the camera.
  WorldState world() const;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceConfig {
  int n_objects = 12;
  double length = 0.9;
  double width = 0.45;
  double diameter_min = 0.05;
  double diameter_max = 0.06;
  double height_min = 0.06;
  double height_max = 0.07;
  double robot_radius = 0.05;
  double safety_margin = 0.005;
  Case scenario_case = Case::I;
  double hidden_fraction = 0.20;
  std::uint64_t seed = 0;
  /// Minimum distance from an object center to any wall; negative selects
  /// the largest possible radius, so every object lies inside the shelf.
  double wall_clearance = -1.0;
  /// For N >= 2 in Cases I and II, the target is chosen among objects the
  /// robot cannot reach without relocating something first.
  bool require_blocked_target = true;
  /// Only accept scenes whose target is connected to the robot in the
  /// T-graph over all objects (hidden ones included).
  bool require_reachable_target = true;
  CameraModel camera;
  double resolution = kDefaultResolution;
  int max_attempts = 400;
};

/// Number of hidden obstacles in a Case II instance: ceil(fraction * N).
int hidden_count(const InstanceConfig& cfg);

/// Samples a scene. Same config and seed give the same scene. Case II hides
/// exactly hidden_count() non-target objects from the camera; Case III hides
/// the target. Throws GenerationError when rejection sampling gives up.
///
/// Removing objects never disconnects the robot from the target in the
/// T-graph, so a reachable target stays reachable for the whole episode.
Scenario generate_instance(const InstanceConfig& cfg);

struct EpisodeOptions {
  double budget_s = 60.0;
  double resolution = kDefaultResolution;
  DistanceConfig distance;
  VfhConfig vfh;
};

struct RunMetrics {
  bool success = false;
  bool timed_out = false;
  /// Includes the target on success.
  int relocated_count = 0;
  std::vector<int> relocated;
  int replans = 0;
  double time_total_s = 0.0;
  double time_per_action_s = 0.0;
  std::string reason;
  EventLog events;
};

/// Runs one planner on its own copy of the world under a wall-clock budget.
RunMetrics run_episode(WorldState world, const Workspace& w, Method method,
                       MotionOracle& oracle, const EpisodeOptions& opts = {});

/// Oracle selection shared by the batch runner and the CLI.
struct OracleSpec {
  enum class Kind { Always, Fault, Disc2d, RandomFault };
  Kind kind = Kind::Always;
  FaultTable table;
  /// RandomFault: first-query failure probability (wraps disc2d).
  double fault_probability = 0.2;
};

/// "always", "disc2d", "fault:<file>" or "randfault:<p>".
OracleSpec parse_oracle_spec(const std::string& text);
std::string to_string(const OracleSpec& spec);
std::unique_ptr<MotionOracle> make_oracle(const OracleSpec& spec,
                                          std::uint64_t seed,
                                          double resolution);

struct BatchSpec {
  std::vector<InstanceConfig> configs;
  int repetitions = 20;
  std::vector<Method> methods{Method::Proposed, Method::Distance, Method::Vfh};
  OracleSpec oracle;
  EpisodeOptions episode;
  /// Episodes run on this many threads; results do not depend on it apart
  /// from timings.
  int workers = 1;
};

struct EpisodeRecord {
  int episode_id = 0;
  Method method = Method::Proposed;
  Case scenario_case = Case::I;
  int n_objects = 0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

/// Per (method, case, N) statistics. Relocation and timing statistics are
/// over successful episodes; failed episodes get their own column.
struct AggregateRow {
  Method method = Method::Proposed;
  Case scenario_case = Case::I;
  int n_objects = 0;
  int episodes = 0;
  int successes = 0;
  double success_rate = 0.0;
  double relocated_mean = 0.0;
  double relocated_std = 0.0;
  double time_per_action_mean = 0.0;
  double time_per_action_std = 0.0;
  double replans_mean = 0.0;
  /// Mean relocations of failed episodes; NaN when none failed.
  double failed_relocated_mean = 0.0;
};

struct BatchResult {
  std::vector<EpisodeRecord> episodes;
  std::vector<AggregateRow> table;
};

/// Every config x repetition x method. Repetition r of a config uses seed
/// cfg.seed + r, and all methods see the same instance and oracle seed.
BatchResult run_batch(const BatchSpec& spec);

std::vector<AggregateRow> aggregate(const std::vector<EpisodeRecord>& episodes);

/// method,case,N,seed,success,relocated,replans,time_total_s,time_per_action_s
std::string metrics_csv(const std::vector<EpisodeRecord>& episodes);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

}  // namespace relocate
