#include "relocate/render.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "relocate/occlusion.hpp"
#include "relocate/planner.hpp"
#include "relocate/tgraph.hpp"

namespace relocate {
namespace {

class Canvas {
 public:
  Canvas(const Workspace& w, double scale) : w_(w), scale_(scale) {}

  double px(double x) const { return kMargin + x * scale_; }
  double py(double y) const { return kMargin + (w_.width - y) * scale_; }
  double width() const { return 2 * kMargin + w_.length * scale_; }
  double height() const { return 2 * kMargin + (w_.width + w_.apron_depth) * scale_; }
  double len(double d) const { return d * scale_; }

 private:
  static constexpr double kMargin = 20.0;
  const Workspace& w_;
  double scale_;
};

std::string f(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void polygon(std::ostream& os, const Canvas& c, const Polygon& poly,
             const char* style) {
  if (poly.size() < 3) return;
  os << "<polygon points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) os << ' ';
    os << f(c.px(poly[i].x)) << ',' << f(c.py(poly[i].y));
  }
  os << "\" " << style << "/>\n";
}

void line(std::ostream& os, const Canvas& c, Point a, Point b, const char* style) {
  os << "<line x1=\"" << f(c.px(a.x)) << "\" y1=\"" << f(c.py(a.y)) << "\" x2=\""
     << f(c.px(b.x)) << "\" y2=\"" << f(c.py(b.y)) << "\" " << style << "/>\n";
}

void circle(std::ostream& os, const Canvas& c, Point p, double r, const char* style) {
  os << "<circle cx=\"" << f(c.px(p.x)) << "\" cy=\"" << f(c.py(p.y)) << "\" r=\""
     << f(c.len(r)) << "\" " << style << "/>\n";
}

void label(std::ostream& os, const Canvas& c, Point p, const std::string& text) {
  os << "<text x=\"" << f(c.px(p.x)) << "\" y=\"" << f(c.py(p.y) + 4.0)
     << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
     << escape(text) << "</text>\n";
}

}  // namespace

std::string render_svg(const WorldState& world, const Workspace& w,
                       const RenderOptions& opts, const std::string& title) {
  const Canvas c(w, opts.scale);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(c.width())
     << "\" height=\"" << f(c.height()) << "\" viewBox=\"0 0 " << f(c.width())
     << ' ' << f(c.height()) << "\">\n";
  if (!title.empty()) os << "<title>" << escape(title) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << f(c.width()) << "\" height=\""
     << f(c.height()) << "\" fill=\"white\"/>\n";
  os << "<rect class=\"shelf\" x=\"" << f(c.px(0.0)) << "\" y=\"" << f(c.py(w.width))
     << "\" width=\"" << f(c.len(w.length)) << "\" height=\"" << f(c.len(w.width))
     << "\" fill=\"#f4f1ea\" stroke=\"none\"/>\n";
  for (const Segment& s : w.walls()) {
    line(os, c, s.a, s.b, "class=\"wall\" stroke=\"black\" stroke-width=\"3\"");
  }
  line(os, c, w.open_edge().a, w.open_edge().b,
       "class=\"open-edge\" stroke=\"gray\" stroke-dasharray=\"6,4\"");

  const std::vector<ObjectSpec>& present = world.objects();
  if (opts.shadows && !present.empty() && !w.contains(world.camera().planar())) {
    for (const ObjectSpec& o : present) {
      polygon(os, c, shadow_wedge(o.footprint(), world.camera().planar(), w),
              "class=\"shadow\" fill=\"#555555\" fill-opacity=\"0.18\" stroke=\"none\"");
    }
  }

  const std::vector<ObjectSpec> known = world.belief();
  if ((opts.graph || opts.path) && !known.empty()) {
    const TGraph g = gen_graph(known, w, opts.resolution);
    if (opts.graph) {
      for (int a : g.nodes()) {
        for (int b : g.neighbors(a)) {
          if (b > a) {
            line(os, c, g.pose(a), g.pose(b),
                 "class=\"edge\" stroke=\"#3b7dd8\" stroke-width=\"1.5\"");
          }
        }
      }
    }
    if (opts.path && world.target_present() && world.target_detected()) {
      if (const auto plan = reloc_path(g, world.target_id())) {
        const auto& p = plan->source_path;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
          line(os, c, g.pose(p[i]), g.pose(p[i + 1]),
               "class=\"path\" stroke=\"#e08a00\" stroke-width=\"4\"");
        }
      }
    }
  }

  for (const ObjectSpec& o : present) {
    const bool seen = world.detected().contains(o.id);
    const char* style =
        !seen ? "class=\"object hidden\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"3,2\""
        : o.is_target ? "class=\"object target\" fill=\"#e04040\" stroke=\"black\""
                      : "class=\"object\" fill=\"#9fc6e8\" stroke=\"black\"";
    circle(os, c, o.center, o.radius, style);
    label(os, c, o.center, std::to_string(o.id));
  }

  circle(os, c, w.robot_home, w.robot_radius,
         "class=\"robot\" fill=\"#7fbf7f\" stroke=\"black\"");
  label(os, c, w.robot_home, "R");
  const Point cam = world.camera().planar();
  os << "<rect class=\"camera\" x=\"" << f(c.px(cam.x) - 5.0) << "\" y=\""
     << f(c.py(cam.y) - 5.0) << "\" width=\"10.00\" height=\"10.00\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_scenario(const Scenario& sc, const RenderOptions& opts) {
  if (sc.objects.empty()) {
    const Canvas c(sc.workspace, opts.scale);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(c.width())
       << "\" height=\"" << f(c.height()) << "\" viewBox=\"0 0 " << f(c.width())
       << ' ' << f(c.height()) << "\">\n";
    os << "<rect class=\"shelf\" x=\"" << f(c.px(0.0)) << "\" y=\""
       << f(c.py(sc.workspace.width)) << "\" width=\"" << f(c.len(sc.workspace.length))
       << "\" height=\"" << f(c.len(sc.workspace.width))
       << "\" fill=\"#f4f1ea\" stroke=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
  }
  return render_svg(sc.world(), sc.workspace, opts, "initial");
}

std::vector<std::string> render_frames(const Scenario& sc, const EventLog& log,
                                       const RenderOptions& opts) {
  WorldState world = sc.world();
  std::vector<std::string> frames{render_svg(world, sc.workspace, opts, "step 0")};
  for (const Event& e : log.events()) {
    if (e.kind != "remove" || !e.object) continue;
    world.remove(*e.object);
    world.sense(sc.workspace);
    frames.push_back(render_svg(world, sc.workspace, opts,
                                "step " + std::to_string(e.step) + ": removed " +
                                    std::to_string(*e.object)));
  }
  return frames;
}

}  // namespace relocate
