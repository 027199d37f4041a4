#include "relocate/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace relocate {
namespace {

constexpr double kCm = 0.01;

std::vector<double> numbers(std::istringstream& in, std::size_t min_count,
                            std::size_t max_count, const std::string& key,
                            int line) {
  std::vector<double> out;
  std::string tok;
  while (out.size() < max_count && in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError("'" + key + "': bad number '" + tok + "'", line);
    out.push_back(v);
  }
  if (out.size() < min_count) {
    throw ParseError("'" + key + "' needs " + std::to_string(min_count) + " numbers", line);
  }
  return out;
}

void expect_end(std::istringstream& in, const std::string& key, int line) {
  std::string extra;
  if (in >> extra) throw ParseError("'" + key + "': unexpected '" + extra + "'", line);
}

std::string cm(double meters) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", meters / kCm);
  return buf;
}

std::string plain(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ParseError::ParseError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  std::set<int> ids;
  int targets = 0;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;

    if (key == "case") {
      std::string c;
      if (!(ls >> c)) throw ParseError("'case' needs a value", line);
      try {
        sc.scenario_case = parse_case(c);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line);
      }
      expect_end(ls, key, line);
    } else if (key == "workspace") {
      const auto v = numbers(ls, 2, 2, key, line);
      sc.workspace.length = v[0] * kCm;
      sc.workspace.width = v[1] * kCm;
      expect_end(ls, key, line);
    } else if (key == "apron") {
      sc.workspace.apron_depth = numbers(ls, 1, 1, key, line)[0] * kCm;
      expect_end(ls, key, line);
    } else if (key == "robot") {
      const auto v = numbers(ls, 2, 4, key, line);
      sc.workspace.robot_home = {v[0] * kCm, v[1] * kCm};
      if (v.size() > 2) sc.workspace.robot_radius = v[2] * kCm;
      if (v.size() > 3) sc.workspace.safety_margin = v[3] * kCm;
      expect_end(ls, key, line);
    } else if (key == "camera") {
      const auto v = numbers(ls, 3, 5, key, line);
      if (v.size() == 4) throw ParseError("'camera' field of view needs two angles", line);
      sc.camera.x = v[0] * kCm;
      sc.camera.y = v[1] * kCm;
      sc.camera.height = v[2] * kCm;
      if (v.size() == 5) {
        sc.camera.fov_min = v[3];
        sc.camera.fov_max = v[4];
      }
      expect_end(ls, key, line);
    } else if (key == "object") {
      std::string id_tok;
      if (!(ls >> id_tok)) throw ParseError("'object' needs an id", line);
      std::size_t used = 0;
      int id = -1;
      try {
        id = std::stoi(id_tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != id_tok.size() || id < 0) {
        throw ParseError("'object': bad id '" + id_tok + "'", line);
      }
      if (!ids.insert(id).second) throw ParseError("duplicate object id " + id_tok, line);
      const auto v = numbers(ls, 4, 4, key, line);
      ObjectSpec o;
      o.id = id;
      o.center = {v[0] * kCm, v[1] * kCm};
      o.radius = v[2] * kCm;
      o.height = v[3] * kCm;
      if (!(o.radius > 0.0) || !(o.height > 0.0)) {
        throw ParseError("object " + id_tok + ": radius and height must be positive", line);
      }
      std::string flag;
      while (ls >> flag) {
        if (flag == "target") {
          o.is_target = true;
          ++targets;
        } else if (flag == "hidden") {
          o.hidden = true;
        } else {
          throw ParseError("object " + id_tok + ": unknown flag '" + flag + "'", line);
        }
      }
      sc.objects.push_back(o);
    } else {
      throw ParseError("unknown record '" + key + "'", line);
    }
  }
  if (!sc.objects.empty() && targets != 1) {
    throw ParseError("expected exactly one target object, found " + std::to_string(targets), 0);
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'", 0);
  try {
    return parse_scenario(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

std::string write_scenario(const Scenario& sc) {
  const Workspace& w = sc.workspace;
  std::ostringstream os;
  os << "# lengths in centimeters\n";
  os << "case " << to_string(sc.scenario_case) << '\n';
  os << "workspace " << cm(w.length) << ' ' << cm(w.width) << '\n';
  os << "apron " << cm(w.apron_depth) << '\n';
  os << "robot " << cm(w.robot_home.x) << ' ' << cm(w.robot_home.y) << ' '
     << cm(w.robot_radius) << ' ' << cm(w.safety_margin) << '\n';
  os << "camera " << cm(sc.camera.x) << ' ' << cm(sc.camera.y) << ' '
     << cm(sc.camera.height) << ' ' << plain(sc.camera.fov_min) << ' '
     << plain(sc.camera.fov_max) << '\n';
  for (const ObjectSpec& o : sc.objects) {
    os << "object " << o.id << ' ' << cm(o.center.x) << ' ' << cm(o.center.y)
       << ' ' << cm(o.radius) << ' ' << cm(o.height);
    if (o.is_target) os << " target";
    if (o.hidden) os << " hidden";
    os << '\n';
  }
  return os.str();
}

}  // namespace relocate
