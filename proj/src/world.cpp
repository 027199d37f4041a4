#include "relocate/world.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace relocate {

WorldState::WorldState(std::vector<ObjectSpec> objects, CameraModel camera,
                       Sensing sensing, const Workspace& w)
    : objects_(std::move(objects)), camera_(camera), sensing_(sensing) {
  std::sort(objects_.begin(), objects_.end(),
            [](const ObjectSpec& a, const ObjectSpec& b) { return a.id < b.id; });
  int targets = 0;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (i > 0 && objects_[i].id == objects_[i - 1].id) {
      throw ConfigError("duplicate object id " + std::to_string(objects_[i].id));
    }
    if (objects_[i].is_target) {
      ++targets;
      target_id_ = objects_[i].id;
    }
  }
  if (targets != 1) {
    throw ConfigError("a scene needs exactly one target, found " +
                      std::to_string(targets));
  }
  sense(w);
}

std::vector<ObjectSpec> WorldState::belief() const {
  std::vector<ObjectSpec> out;
  for (const ObjectSpec& o : objects_) {
    if (detected_.contains(o.id)) out.push_back(o);
  }
  return out;
}

bool WorldState::is_present(int id) const {
  return std::any_of(objects_.begin(), objects_.end(),
                     [id](const ObjectSpec& o) { return o.id == id; });
}

bool WorldState::target_present() const { return is_present(target_id_); }

const ObjectSpec& WorldState::object(int id) const {
  for (const ObjectSpec& o : objects_) {
    if (o.id == id) return o;
  }
  throw LookupError("object " + std::to_string(id) + " is not in the scene");
}

void WorldState::remove(int id) {
  const auto it = std::find_if(objects_.begin(), objects_.end(),
                               [id](const ObjectSpec& o) { return o.id == id; });
  if (it == objects_.end()) {
    throw LookupError("cannot remove object " + std::to_string(id));
  }
  objects_.erase(it);
  removed_.push_back(id);
}

std::vector<int> WorldState::sense(const Workspace& w) {
  std::set<int> now;
  if (sensing_ == Sensing::Full) {
    for (const ObjectSpec& o : objects_) now.insert(o.id);
  } else {
    now = detected_objects(objects_, camera_, w);
  }
  std::vector<int> fresh;
  for (int id : now) {
    if (detected_.insert(id).second) fresh.push_back(id);
  }
  return fresh;
}

std::string join_ids(const std::vector<int>& ids, char sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string Event::to_line() const {
  std::ostringstream out;
  auto opt = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  auto text = [](const std::string& s) { return s.empty() ? std::string("-") : s; };
  out << "step=" << step << " event=" << kind << " object=" << opt(object)
      << " verdict=" << text(verdict) << " nodes=" << opt(nodes)
      << " edges=" << opt(edges)
      << " plan=" << (plan ? (plan->empty() ? std::string("none") : join_ids(*plan)) : "-")
      << " note=" << text(note);
  return out.str();
}

Event parse_event(const std::string& line) {
  std::istringstream in(line);
  std::string token;
  Event e;
  auto value = [&](const char* key) {
    if (!(in >> token)) throw std::invalid_argument("truncated event: " + line);
    const std::string prefix = std::string(key) + "=";
    if (token.rfind(prefix, 0) != 0) {
      throw std::invalid_argument("expected " + prefix + " in: " + line);
    }
    return token.substr(prefix.size());
  };
  auto opt_int = [](const std::string& s) -> std::optional<int> {
    if (s == "-") return std::nullopt;
    return std::stoi(s);
  };
  e.step = std::stoi(value("step"));
  e.kind = value("event");
  e.object = opt_int(value("object"));
  e.verdict = value("verdict");
  if (e.verdict == "-") e.verdict.clear();
  e.nodes = opt_int(value("nodes"));
  e.edges = opt_int(value("edges"));
  const std::string plan = value("plan");
  if (plan == "none") {
    e.plan = std::vector<int>{};
  } else if (plan != "-") {
    std::vector<int> ids;
    std::istringstream parts(plan);
    std::string id;
    while (std::getline(parts, id, ',')) ids.push_back(std::stoi(id));
    e.plan = ids;
  }
  // The note runs to the end of the line and may contain spaces.
  const auto pos = line.find(" note=");
  if (pos == std::string::npos) throw std::invalid_argument("missing note: " + line);
  e.note = line.substr(pos + 6);
  if (e.note == "-") e.note.clear();
  return e;
}

std::string EventLog::str() const {
  std::string out;
  for (const Event& e : events_) {
    out += e.to_line();
    out += '\n';
  }
  return out;
}

std::size_t EventLog::count(const std::string& kind) const {
  return static_cast<std::size_t>(std::count_if(
      events_.begin(), events_.end(), [&](const Event& e) { return e.kind == kind; }));
}

Deadline::Deadline(double seconds) {
  until_ = std::chrono::steady_clock::now();
  if (seconds > 0.0) {
    *until_ += std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(seconds));
  }
}

bool Deadline::expired() const {
  return until_ && std::chrono::steady_clock::now() >= *until_;
}

}  // namespace relocate
