#include "relocate/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "relocate/harness.hpp"
#include "relocate/planner.hpp"
#include "relocate/render.hpp"
#include "relocate/scenario_io.hpp"
#include "relocate/tgraph.hpp"

namespace relocate {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SceneArgs {
  std::string scenario;
  std::string scenario_case = "I";
  int n = 12;
  std::uint64_t seed = 0;
  double hidden_fraction = 0.20;
  double grid_res = kDefaultResolution;

  void attach(CLI::App& cmd, bool single_scene = true) {
    if (single_scene) {
      cmd.add_option("--scenario", scenario, "Scenario file (centimeters)");
      cmd.add_option("--case", scenario_case, "Case for generated scenes: I, II or III");
      cmd.add_option("--n", n, "Object count for generated scenes");
    }
    cmd.add_option("--seed", seed, "Generator and oracle seed");
    cmd.add_option("--hidden-fraction", hidden_fraction, "Case II hidden share");
    cmd.add_option("--grid-res", grid_res, "Corridor grid resolution in meters")
        ->check(CLI::PositiveNumber);
  }

  InstanceConfig instance() const {
    InstanceConfig cfg;
    cfg.n_objects = n;
    cfg.seed = seed;
    cfg.hidden_fraction = hidden_fraction;
    cfg.resolution = grid_res;
    cfg.scenario_case = parse_case(scenario_case);
    return cfg;
  }

  Scenario load() const {
    if (!scenario.empty()) return load_scenario(scenario);
    return generate_instance(instance());
  }

  void describe(ordered_json& j) const {
    if (!scenario.empty()) {
      j["scenario"] = scenario;
    } else {
      j["case"] = scenario_case;
      j["n"] = n;
      j["seed"] = seed;
      j["hidden_fraction"] = hidden_fraction;
    }
    j["grid_res"] = grid_res;
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

EventLog parse_log(const std::string& text) {
  EventLog log;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    log.add(parse_event(line));
  }
  return log;
}

void describe_scene(ordered_json& j, const Scenario& sc) {
  j["workspace_m"] = {sc.workspace.length, sc.workspace.width};
  j["robot_home_m"] = {sc.workspace.robot_home.x, sc.workspace.robot_home.y};
  j["robot_radius_m"] = sc.workspace.robot_radius;
  j["safety_margin_m"] = sc.workspace.safety_margin;
  j["camera_m"] = {sc.camera.x, sc.camera.y, sc.camera.height};
  j["objects"] = sc.objects.size();
}

int cmd_plan(const SceneArgs& scene, const std::string& method_name,
             const std::string& oracle_text, double timeout_s,
             const std::string& out_dir, std::ostream& out) {
  const Method method = parse_method(method_name);
  const OracleSpec oracle_spec = parse_oracle_spec(oracle_text);
  const Scenario sc = scene.load();

  ordered_json cfg;
  cfg["command"] = "plan";
  scene.describe(cfg);
  cfg["method"] = to_string(method);
  cfg["oracle"] = to_string(oracle_spec);
  cfg["timeout_s"] = timeout_s;
  describe_scene(cfg, sc);
  out << "# config " << cfg.dump() << '\n';

  EpisodeOptions opts;
  opts.budget_s = timeout_s;
  opts.resolution = scene.grid_res;
  auto oracle = make_oracle(oracle_spec, scene.seed, scene.grid_res);
  EpisodeRecord rec;
  rec.method = method;
  rec.scenario_case = sc.scenario_case;
  rec.n_objects = static_cast<int>(sc.objects.size());
  rec.seed = scene.seed;
  rec.metrics = run_episode(sc.world(), sc.workspace, method, *oracle, opts);
  const RunMetrics& m = rec.metrics;

  out << m.events.str();
  out << "# result status=" << (m.success ? "done" : m.timed_out ? "timeout" : "fail")
      << " relocated=" << m.relocated_count << " order=" << join_ids(m.relocated)
      << " replans=" << m.replans;
  if (!m.reason.empty()) out << " reason=\"" << m.reason << '"';
  out << '\n';

  if (!out_dir.empty()) {
    const fs::path dir(out_dir);
    write_file(dir / "config.json", cfg.dump(2) + "\n");
    write_file(dir / "events.log", m.events.str());
    write_file(dir / "metrics.csv", metrics_csv({rec}));
    write_file(dir / "scenario.txt", write_scenario(sc));
  }
  if (m.success) return kExitOk;
  return m.timed_out ? kExitTimeout : kExitPlannerFail;
}

int cmd_batch(const SceneArgs& scene, const std::string& cases,
              const std::string& ns, const std::string& methods,
              const std::string& oracle_text, double timeout_s, int reps,
              int workers, const std::string& out_dir, std::ostream& out) {
  BatchSpec spec;
  spec.repetitions = reps;
  spec.workers = workers;
  spec.oracle = parse_oracle_spec(oracle_text);
  spec.episode.budget_s = timeout_s;
  spec.episode.resolution = scene.grid_res;
  spec.methods.clear();
  for (const std::string& m : split(methods, ',')) spec.methods.push_back(parse_method(m));
  if (spec.methods.empty()) throw InputError("no methods given");

  std::vector<int> sizes;
  for (const std::string& n : split(ns, ',')) {
    try {
      sizes.push_back(std::stoi(n));
    } catch (const std::exception&) {
      throw InputError("bad object count '" + n + "'");
    }
  }
  for (const std::string& c : split(cases, ',')) {
    for (int n : sizes) {
      SceneArgs a = scene;
      a.scenario_case = c;
      a.n = n;
      spec.configs.push_back(a.instance());
    }
  }

  ordered_json cfg;
  cfg["command"] = "batch";
  cfg["cases"] = split(cases, ',');
  cfg["n"] = sizes;
  cfg["seed"] = scene.seed;
  cfg["hidden_fraction"] = scene.hidden_fraction;
  cfg["grid_res"] = scene.grid_res;
  cfg["reps"] = reps;
  std::vector<std::string> method_names;
  for (Method m : spec.methods) method_names.push_back(to_string(m));
  cfg["methods"] = method_names;
  cfg["oracle"] = to_string(spec.oracle);
  cfg["timeout_s"] = timeout_s;
  cfg["workers"] = workers;
  out << "# config " << cfg.dump() << '\n';

  const BatchResult result = run_batch(spec);
  out << aggregate_csv(result.table);
  if (!out_dir.empty()) {
    const fs::path dir(out_dir);
    write_file(dir / "config.json", cfg.dump(2) + "\n");
    write_file(dir / "metrics.csv", metrics_csv(result.episodes));
    write_file(dir / "table.csv", aggregate_csv(result.table));
  }
  return kExitOk;
}

int cmd_graph(const SceneArgs& scene, const std::string& out_path, std::ostream& out) {
  const Scenario sc = scene.load();
  const WorldState world = sc.world();
  const TGraph g = gen_graph(world.belief(), sc.workspace, scene.grid_res);
  std::ostringstream os;
  ordered_json cfg;
  cfg["command"] = "graph";
  scene.describe(cfg);
  os << "# config " << cfg.dump() << '\n';
  os << g.dump();
  if (world.target_detected()) {
    const auto plan = reloc_path(g, world.target_id());
    os << "# path " << (plan ? join_ids(plan->order) : std::string("none")) << '\n';
  } else {
    os << "# path target-undetected\n";
  }
  if (out_path.empty()) {
    out << os.str();
  } else {
    write_file(out_path, os.str());
  }
  return kExitOk;
}

int cmd_render(const SceneArgs& scene, const std::string& log_path,
               const std::string& out_path, bool no_graph, bool no_shadows,
               std::ostream& out) {
  const Scenario sc = scene.load();
  RenderOptions opts;
  opts.resolution = scene.grid_res;
  opts.graph = !no_graph;
  opts.path = !no_graph;
  opts.shadows = !no_shadows;
  if (log_path.empty()) {
    const std::string svg = render_scenario(sc, opts);
    if (out_path.empty()) {
      out << svg;
    } else {
      write_file(out_path, svg);
    }
    return kExitOk;
  }
  if (out_path.empty()) throw InputError("render with --log needs --out <directory>");
  const std::vector<std::string> frames = render_frames(sc, parse_log(read_file(log_path)), opts);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03zu.svg", i);
    write_file(fs::path(out_path) / name, frames[i]);
  }
  out << "# wrote " << frames.size() << " frames to " << out_path << '\n';
  return kExitOk;
}

int cmd_gen(const SceneArgs& scene, const std::string& out_path, std::ostream& out) {
  const Scenario sc = generate_instance(scene.instance());
  ordered_json cfg;
  cfg["command"] = "gen";
  scene.describe(cfg);
  const std::string text = "# config " + cfg.dump() + "\n" + write_scenario(sc);
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Object relocation planning for retrieval from clutter"};
  app.require_subcommand(1);

  SceneArgs scene;
  std::string method = "proposed";
  std::string oracle = "always";
  double timeout_s = 60.0;
  std::string out_path;

  auto* plan = app.add_subcommand("plan", "Run one episode and print its event log");
  scene.attach(*plan);
  plan->add_option("--method", method, "proposed, distance or vfh");
  plan->add_option("--oracle", oracle, "always, disc2d, fault:<file> or randfault:<p>");
  plan->add_option("--timeout-s", timeout_s, "Wall-clock budget per episode")
      ->check(CLI::PositiveNumber);
  plan->add_option("--out", out_path, "Directory for config, log and metrics");

  auto* batch = app.add_subcommand("batch", "Run seeded experiments and print the table");
  SceneArgs batch_scene;
  batch_scene.attach(*batch, false);
  std::string cases = "I";
  std::string ns = "12,16,20";
  std::string methods = "proposed,distance,vfh";
  int reps = 20;
  int workers = 1;
  batch->add_option("--case", cases, "Comma-separated cases");
  batch->add_option("--n", ns, "Comma-separated object counts");
  batch->add_option("--methods,--method", methods, "Comma-separated methods");
  batch->add_option("--oracle", oracle, "always, disc2d, fault:<file> or randfault:<p>");
  batch->add_option("--timeout-s", timeout_s, "Wall-clock budget per episode")
      ->check(CLI::PositiveNumber);
  batch->add_option("--reps", reps, "Instances per (case, N)")->check(CLI::NonNegativeNumber);
  batch->add_option("--workers", workers, "Parallel episodes")->check(CLI::PositiveNumber);
  batch->add_option("--out", out_path, "Directory for config, metrics and table");

  auto* graph = app.add_subcommand("graph", "Print the T-graph and min-hop path");
  SceneArgs graph_scene;
  graph_scene.attach(*graph);
  graph->add_option("--out", out_path, "Output file");

  auto* render = app.add_subcommand("render", "Draw a scene, or one frame per removal");
  SceneArgs render_scene;
  render_scene.attach(*render);
  std::string log_path;
  bool no_graph = false;
  bool no_shadows = false;
  render->add_option("--log", log_path, "Event log from `plan` to replay");
  render->add_option("--out", out_path, "SVG file, or frame directory with --log");
  render->add_flag("--no-graph", no_graph, "Omit T-graph edges and path");
  render->add_flag("--no-shadows", no_shadows, "Omit shadow wedges");

  auto* gen = app.add_subcommand("gen", "Generate a scenario file");
  SceneArgs gen_scene;
  gen_scene.attach(*gen);
  gen->add_option("--out", out_path, "Output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (plan->parsed()) return cmd_plan(scene, method, oracle, timeout_s, out_path, out);
    if (batch->parsed()) {
      return cmd_batch(batch_scene, cases, ns, methods, oracle, timeout_s, reps,
                       workers, out_path, out);
    }
    if (graph->parsed()) return cmd_graph(graph_scene, out_path, out);
    if (render->parsed()) {
      return cmd_render(render_scene, log_path, out_path, no_graph, no_shadows, out);
    }
    if (gen->parsed()) return cmd_gen(gen_scene, out_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace relocate
