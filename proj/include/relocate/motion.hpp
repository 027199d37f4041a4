#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <string>

#include "relocate/corridor.hpp"
#include "relocate/world.hpp"

namespace relocate {

enum class Verdict { Success, Failure };

const char* to_string(Verdict v);

/// Pick-and-place feasibility check for one object in the current scene.
/// A success means the object may be picked at its pose and dropped in the
/// disposal zone. Implementations may keep per-run state (fault counters),
/// so each planner run needs its own instance.
class MotionOracle {
 public:
  virtual ~MotionOracle() = default;
  virtual Verdict query(int object_id, const WorldState& world,
                        const Workspace& w) = 0;
  virtual std::string name() const = 0;
};

class AlwaysSucceed final : public MotionOracle {
 public:
  Verdict query(int, const WorldState&, const Workspace&) override {
    return Verdict::Success;
  }
  std::string name() const override { return "always"; }
};

struct FaultEntry {
  /// Failures to report before deferring to the inner oracle.
  int fail_count = 0;
  bool always = false;
};

using FaultTable = std::map<int, FaultEntry>;

/// Reads `object_id fail_count|always` lines; '#' starts a comment.
/// Throws std::invalid_argument on malformed lines.
FaultTable parse_fault_table(std::istream& in);
FaultTable load_fault_table(const std::string& path);

/// Replays a fault table: an object listed with n failures fails its first
/// n queries, "always" fails every query. Everything else goes to `inner`.
class ScriptedFault final : public MotionOracle {
 public:
  explicit ScriptedFault(FaultTable table,
                         std::unique_ptr<MotionOracle> inner = nullptr);
  Verdict query(int object_id, const WorldState& world,
                const Workspace& w) override;
  std::string name() const override { return "fault"; }

 private:
  FaultTable table_;
  std::unique_ptr<MotionOracle> inner_;
};

/// Geometric stand-in for arm motion planning. Succeeds iff the bare
/// end-effector (radius r_r) can reach the object from the robot home and
/// the end-effector holding it (r_o + r_r + r_s) can carry it to the disposal
/// zone. Uses ground truth, so undetected objects still get in the way.
class Disc2dOracle final : public MotionOracle {
 public:
  explicit Disc2dOracle(double resolution = kDefaultResolution)
      : resolution_(resolution) {}
  Verdict query(int object_id, const WorldState& world,
                const Workspace& w) override;
  std::string name() const override { return "disc2d"; }

 private:
  double resolution_;
};

/// Each object's first query fails with probability `p`, decided by a hash
/// of (seed, object id). Later queries and non-faulted first queries go to
/// `inner`.
class RandomFirstFault final : public MotionOracle {
 public:
  RandomFirstFault(double p, std::uint64_t seed,
                   std::unique_ptr<MotionOracle> inner);
  Verdict query(int object_id, const WorldState& world,
                const Workspace& w) override;
  std::string name() const override { return "randfault"; }

  /// The deterministic coin used for `object_id`.
  bool first_query_fails(int object_id) const;

 private:
  double p_;
  std::uint64_t seed_;
  std::unique_ptr<MotionOracle> inner_;
  std::map<int, int> queries_;
};

}  // namespace relocate
