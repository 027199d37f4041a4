#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relocate/geometry.hpp"
#include "relocate/occlusion.hpp"

namespace relocate {

/// How the robot perceives the scene.
enum class Sensing {
  /// Every present object is known (Case I).
  Full,
  /// Only objects the camera can see are known (Cases II and III).
  Camera,
};

/// Ground truth plus the robot's belief about it. Removal only ever takes
/// objects out of the scene, so the detected set never shrinks.
class WorldState {
 public:
  WorldState(std::vector<ObjectSpec> objects, CameraModel camera,
             Sensing sensing, const Workspace& w);

  /// Objects still on the shelf (ground truth), ordered by id.
  const std::vector<ObjectSpec>& objects() const { return objects_; }
  /// Present objects the robot knows about, ordered by id.
  std::vector<ObjectSpec> belief() const;
  const std::set<int>& detected() const { return detected_; }
  const std::vector<int>& removed() const { return removed_; }
  const CameraModel& camera() const { return camera_; }
  Sensing sensing() const { return sensing_; }

  int target_id() const { return target_id_; }
  bool target_present() const;
  bool target_detected() const { return detected_.contains(target_id_); }
  bool is_present(int id) const;
  const ObjectSpec& object(int id) const;

  /// Takes a present object off the shelf. Throws LookupError otherwise.
  void remove(int id);

  /// Refreshes the belief; returns the ids that became known, ascending.
  std::vector<int> sense(const Workspace& w);

 private:
  std::vector<ObjectSpec> objects_;
  CameraModel camera_;
  Sensing sensing_;
  std::set<int> detected_;
  std::vector<int> removed_;
  int target_id_ = -1;
};

/// One planner log record. Fields print in a fixed order; unused ones as "-".
struct Event {
  int step = 0;
  std::string kind;
  std::optional<int> object;
  std::string verdict;
  std::optional<int> nodes;
  std::optional<int> edges;
  std::optional<std::vector<int>> plan;
  std::string note;

  std::string to_line() const;
};

/// Parses a line written by Event::to_line. Throws std::invalid_argument.
Event parse_event(const std::string& line);

class EventLog {
 public:
  void add(Event e) { events_.push_back(std::move(e)); }
  const std::vector<Event>& events() const { return events_; }
  std::string str() const;
  std::size_t count(const std::string& kind) const;

 private:
  std::vector<Event> events_;
};

/// Wall-clock budget shared by the planner loops.
class Deadline {
 public:
  /// Never expires.
  Deadline() = default;
  /// Expires `seconds` from now; immediately when not positive.
  explicit Deadline(double seconds);
  bool expired() const;

 private:
  std::optional<std::chrono::steady_clock::time_point> until_;
};

std::string join_ids(const std::vector<int>& ids, char sep = ',');

}  // namespace relocate
