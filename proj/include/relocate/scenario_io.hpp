#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "relocate/harness.hpp"

namespace relocate {

/// Malformed scenario text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line);
  int line() const { return line_; }

 private:
  int line_;
};

/// Scenario text format, one record per line, lengths in centimeters:
///
///   case II
///   workspace <length> <width>
///   apron <depth>
///   robot <x> <y> <radius> <safety_margin>
///   camera <x> <y> <height> [<fov_min_rad> <fov_max_rad>]
///   object <id> <x> <y> <radius> <height> [target] [hidden]
///
/// '#' starts a comment. Missing records keep their defaults; exactly one
/// object must be flagged as the target.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);
std::string write_scenario(const Scenario& sc);

}  // namespace relocate
