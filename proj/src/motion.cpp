#include "relocate/motion.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace relocate {

const char* to_string(Verdict v) {
  return v == Verdict::Success ? "success" : "failure";
}

FaultTable parse_fault_table(std::istream& in) {
  FaultTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    int id = 0;
    std::string count;
    if (!(fields >> id)) {
      if (fields.eof() && line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      throw std::invalid_argument("fault table line " + std::to_string(lineno) +
                                  ": expected an object id");
    }
    if (!(fields >> count)) {
      throw std::invalid_argument("fault table line " + std::to_string(lineno) +
                                  ": expected a fail count or 'always'");
    }
    FaultEntry entry;
    if (count == "always") {
      entry.always = true;
    } else {
      std::size_t used = 0;
      try {
        entry.fail_count = std::stoi(count, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != count.size() || entry.fail_count < 0) {
        throw std::invalid_argument("fault table line " + std::to_string(lineno) +
                                    ": bad fail count '" + count + "'");
      }
    }
    std::string extra;
    if (fields >> extra) {
      throw std::invalid_argument("fault table line " + std::to_string(lineno) +
                                  ": unexpected '" + extra + "'");
    }
    table[id] = entry;
  }
  return table;
}

FaultTable load_fault_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open fault table " + path);
  return parse_fault_table(in);
}

ScriptedFault::ScriptedFault(FaultTable table, std::unique_ptr<MotionOracle> inner)
    : table_(std::move(table)),
      inner_(inner ? std::move(inner) : std::make_unique<AlwaysSucceed>()) {}

Verdict ScriptedFault::query(int object_id, const WorldState& world,
                             const Workspace& w) {
  const auto it = table_.find(object_id);
  if (it != table_.end()) {
    if (it->second.always) return Verdict::Failure;
    if (it->second.fail_count > 0) {
      --it->second.fail_count;
      return Verdict::Failure;
    }
  }
  return inner_->query(object_id, world, w);
}

Verdict Disc2dOracle::query(int object_id, const WorldState& world,
                            const Workspace& w) {
  const ObjectSpec& target = world.object(object_id);
  std::vector<Disc> others;
  for (const ObjectSpec& o : world.objects()) {
    if (o.id != object_id) others.push_back(o.footprint());
  }
  const CorridorQuery reach{w.robot_radius, w.robot_home, target.center, others, w};
  if (!corridor_exists(reach, resolution_)) return Verdict::Failure;
  const CorridorQuery extract{GraspedRadius::of(target.radius, w, true).value,
                              target.center, w.disposal(), others, w};
  return corridor_exists(extract, resolution_) ? Verdict::Success
                                               : Verdict::Failure;
}

RandomFirstFault::RandomFirstFault(double p, std::uint64_t seed,
                                   std::unique_ptr<MotionOracle> inner)
    : p_(p), seed_(seed), inner_(std::move(inner)) {
  if (!inner_) inner_ = std::make_unique<AlwaysSucceed>();
}

bool RandomFirstFault::first_query_fails(int object_id) const {
  // splitmix64 finalizer over (seed, id).
  std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(object_id) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
  return u < p_;
}

Verdict RandomFirstFault::query(int object_id, const WorldState& world,
                                const Workspace& w) {
  const int n = queries_[object_id]++;
  if (n == 0 && first_query_fails(object_id)) return Verdict::Failure;
  return inner_->query(object_id, world, w);
}

}  // namespace relocate
