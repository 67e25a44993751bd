#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isopart/isopart.hpp"
#include "isopart/io.hpp"
#include "isopart/oracles.hpp"

namespace isopart::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string default_output_dir() {
  if (const char* env = std::getenv("ISOPART_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Collects emitted files and writes the run manifest next to them.
class OutputSet {
 public:
  OutputSet(std::string command, std::string dir) : command_(std::move(command)), dir_(std::move(dir)) {}

  json& parameters() { return parameters_; }

  std::string path_for(const std::string& name) const {
    const fs::path p(name);
    return p.is_absolute() || p.has_parent_path() ? name : (fs::path(dir_) / p).string();
  }

  /// Writes `content` to `name` (relative names go into the output dir).
  std::string write(const std::string& name, const std::string& content) {
    const std::string path = path_for(name);
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    auto out = io::open_output(path);
    out << content;
    outputs_.push_back(path);
    return path;
  }

  std::string finish() {
    json manifest{
        {"command", command_},
        {"parameters", parameters_},
        {"outputs", outputs_},
        {"versions", {{"tool", kToolVersion}, {"format", kFormatVersion}}},
        {"timestamp", utc_timestamp()},
    };
    const std::string path = path_for(command_ + "_manifest.json");
    if (const fs::path parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    auto out = io::open_output(path);
    out << io::dump(manifest);
    return path;
  }

  const std::vector<std::string>& outputs() const { return outputs_; }

 private:
  std::string command_;
  std::string dir_;
  json parameters_ = json::object();
  std::vector<std::string> outputs_;
};

double relative_difference(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// ---- constants --------------------------------------------------------------

struct ConstantsOptions {
  std::string format = "csv";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::string out_file;
  std::string out_dir = default_output_dir();
};

struct ConstantRow {
  std::string name;
  double closed_form;
  double oracle;
};

int cmd_constants(const ConstantsOptions& opt, std::ostream& out) {
  detail::require(opt.format == "csv" || opt.format == "json", "constants: format must be csv or json");
  std::vector<ConstantRow> rows;
  for (int d = 1; d <= 8; ++d) {
    rows.push_back({"omega_" + std::to_string(d), unit_ball_volume(d), oracle::ball_volume(d)});
  }
  for (int d = 0; d <= 7; ++d) {
    rows.push_back({"sphere_area_" + std::to_string(d), sphere_area(d), oracle::sphere_area(d + 1)});
  }
  const LensQuantities lens = lens_quantities();
  const BarrelQuantities barrel = barrel_quantities();
  const double lens_vol = oracle::lens_volume();
  const double lens_per = oracle::lens_perimeter();
  const double lens_plane = oracle::lens_plane_inside();
  const double q_vol = oracle::barrel_volume();
  const double q_per = oracle::barrel_perimeter();
  const double q_cone = oracle::barrel_cone_inside();
  rows.push_back({"lens_volume", lens.volume, lens_vol});
  rows.push_back({"lens_perimeter", lens.perimeter, lens_per});
  rows.push_back({"lens_plane_inside", lens.plane_inside, lens_plane});
  rows.push_back({"barrel_volume", barrel.volume, q_vol});
  rows.push_back({"barrel_perimeter", barrel.perimeter, q_per});
  rows.push_back({"barrel_cone_inside", barrel.cone_inside, q_cone});
  rows.push_back({"defect_lens", lens.defect, defect(lens_per, lens_plane, lens_vol)});
  rows.push_back({"defect_barrel", barrel.defect, defect(q_per, q_cone, q_vol)});
  rows.push_back({"defect_ball", ball_defect(), 8.0 * std::pow(oracle::ball_volume(8), 1.0 / 8.0)});

  const MonteCarloEstimate mc = oracle_lens_volume(opt.samples, opt.seed);

  std::ostringstream text;
  if (opt.format == "csv") {
    text << "name,closed_form,oracle,relative_difference\n";
    for (const auto& r : rows) {
      text << r.name << ',' << io::format_double(r.closed_form) << ',' << io::format_double(r.oracle)
           << ',' << io::format_double(relative_difference(r.closed_form, r.oracle)) << '\n';
    }
    text << "lens_volume_monte_carlo," << io::format_double(lens.volume) << ','
         << io::format_double(mc.value) << ',' << io::format_double(relative_difference(lens.volume, mc.value))
         << '\n';
  } else {
    json j;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"name", r.name},
                           {"closed_form", r.closed_form},
                           {"oracle", r.oracle},
                           {"relative_difference", relative_difference(r.closed_form, r.oracle)}});
    }
    j["monte_carlo"] = {{"samples", mc.samples},
                        {"seed", opt.seed},
                        {"hits", mc.hits},
                        {"closed_form", lens.volume},
                        {"value", mc.value},
                        {"standard_error", mc.standard_error}};
    text << io::dump(j);
  }
  out << text.str();
  if (!opt.out_file.empty()) {
    OutputSet files("constants", opt.out_dir);
    files.parameters() = {{"format", opt.format}, {"samples", opt.samples}, {"seed", opt.seed}};
    files.write(opt.out_file, text.str());
    files.finish();
  }
  return kOk;
}

// ---- solve ------------------------------------------------------------------

struct SolveOptions {
  double lambda = 1.0;
  std::optional<double> a_lo, a_hi;
  SolverConfig cfg{};
  std::string out_dir = default_output_dir();
  std::string svg;
};

int cmd_solve(SolveOptions opt, std::ostream& out) {
  SolverConfig cfg = SolverConfig::for_lambda(opt.lambda);
  cfg.step = opt.cfg.step;
  cfg.axis_eps = opt.cfg.axis_eps;
  cfg.tol_angle = opt.cfg.tol_angle;
  cfg.tol_root = opt.cfg.tol_root;
  cfg.max_steps = opt.cfg.max_steps;
  cfg.truncation_factor = opt.cfg.truncation_factor;
  if (opt.a_lo) cfg.a_lo = *opt.a_lo;
  if (opt.a_hi) cfg.a_hi = *opt.a_hi;

  const Solution sol = solve_partition(cfg);

  OutputSet files("solve", opt.out_dir);
  files.parameters() = {{"lambda", cfg.lambda},       {"step", cfg.step},
                        {"axis_eps", cfg.axis_eps},   {"a_lo", cfg.a_lo},
                        {"a_hi", cfg.a_hi},           {"tol_angle", cfg.tol_angle},
                        {"tol_root", cfg.tol_root},   {"max_steps", cfg.max_steps},
                        {"truncation_factor", cfg.truncation_factor}};
  auto text = [](auto&& writer) {
    std::ostringstream s;
    writer(s);
    return s.str();
  };
  files.write("report.json", io::dump(io::to_json(sol.report)));
  files.write("partition.json", io::dump(io::to_json(sol.partition)));
  files.write("gamma12.csv", text([&](std::ostream& s) { io::write_curve_csv(s, sol.partition.gamma12); }));
  files.write("gamma13.csv", text([&](std::ostream& s) { io::write_curve_csv(s, sol.partition.gamma13); }));
  files.write("gamma23.csv", text([&](std::ostream& s) { io::write_curve_csv(s, sol.partition.gamma23); }));
  files.write("trajectory.csv", text([&](std::ostream& s) { io::write_trajectory_csv(s, sol.shot.trajectory); }));
  if (!opt.svg.empty()) {
    files.write(opt.svg, text([&](std::ostream& s) { io::write_svg(s, sol.partition); }));
  }
  const std::string manifest = files.finish();

  const DefectReport& r = sol.report;
  out << "intercept_a " << io::format_double(r.intercept_a) << '\n'
      << "perimeter_E1 " << io::format_double(r.perimeter_E1) << '\n'
      << "volume_E1 " << io::format_double(r.volume_E1) << '\n'
      << "cone_inside " << io::format_double(r.cone_inside) << '\n'
      << "defect " << io::format_double(r.defect) << '\n'
      << "manifest " << manifest << '\n';
  return kOk;
}

// ---- monotonicity -----------------------------------------------------------

struct MonotonicityOptions {
  std::string partition = "simons";
  std::optional<double> R;
  std::string radii;
  double slack = 1e-6;
  std::string out_file = "monotonicity.csv";
  std::string out_dir = default_output_dir();
};

std::vector<double> parse_radii(const std::string& text, double lo_default) {
  if (text.empty()) {
    std::vector<double> r;
    constexpr int n = 64;
    for (int i = 0; i < n; ++i) r.push_back(lo_default * std::pow(100.0, i / double(n - 1)));
    return r;
  }
  if (text.find(':') != std::string::npos) {
    const auto f = io::split(text, ':');
    detail::require(f.size() == 3, "radii: expected lo:hi:n");
    const double lo = io::parse_double(f[0]);
    const double hi = io::parse_double(f[1]);
    const int n = static_cast<int>(io::parse_double(f[2]));
    detail::require(lo > 0.0 && hi > lo && n >= 1, "radii: need 0 < lo < hi and n >= 1");
    std::vector<double> r;
    for (int i = 0; i < n; ++i) r.push_back(n == 1 ? lo : lo * std::pow(hi / lo, i / double(n - 1)));
    return r;
  }
  std::vector<double> r;
  for (const auto& s : io::split(text, ',')) r.push_back(io::parse_double(s));
  return r;
}

ReducedPartition3 load_partition(const std::string& which) {
  if (which == "simons") return simons_partition();
  if (which == "barrel") return barrel_partition();
  auto in = io::open_input(which);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw PreconditionError("cannot parse partition file " + which + ": " + e.what());
  }
  return io::partition_from_json(j);
}

int cmd_monotonicity(const MonotonicityOptions& opt, std::ostream& out) {
  const ReducedPartition3 p = load_partition(opt.partition);
  const double R = opt.R.value_or(p.bounded_region_radius());
  const double base = std::max(R, norm(p.junction));
  const std::vector<double> radii = parse_radii(opt.radii, base > 0.0 ? 1.05 * base : 1.0);
  const DensityScan scan = monotonicity_scan(p, R, radii);
  const bool pass = scan.nondecreasing(opt.slack);

  OutputSet files("monotonicity", opt.out_dir);
  files.parameters() = {{"partition", opt.partition}, {"R", R}, {"radii", opt.radii}, {"slack", opt.slack}};
  std::ostringstream csv;
  io::write_scan_csv(csv, scan);
  const std::string path = files.write(opt.out_file, csv.str());
  files.finish();

  out << "radii " << radii.size() << '\n'
      << "theta_last " << io::format_double(scan.theta_last) << '\n'
      << "theta_extrapolated " << io::format_double(scan.theta_extrapolated) << '\n'
      << "csv " << path << '\n'
      << "verdict " << (pass ? "pass" : "fail") << '\n';
  return pass ? kOk : kFailed;
}

// ---- diagnostics ------------------------------------------------------------

struct GlueOptions {
  std::string e_file, f_file;
  std::uint64_t seed = 1;
  int resolution = 512;
  std::vector<double> center;
  std::optional<double> r, R;
  std::optional<double> slack;
  std::string out_file = "glue.csv";
  std::string out_dir = default_output_dir();
};

GridPartition load_grid(const std::string& path) {
  auto in = io::open_input(path);
  return io::read_grid(in);
}

int cmd_glue(const GlueOptions& opt, std::ostream& out) {
  detail::require(opt.e_file.empty() == opt.f_file.empty(), "glue: give both --e and --f, or neither");
  std::optional<GridPartition> E, F;
  if (!opt.e_file.empty()) {
    E = load_grid(opt.e_file);
    F = load_grid(opt.f_file);
  } else {
    auto pair = fixtures::random_voronoi_pair(opt.seed, opt.resolution);
    E = std::move(pair.first);
    F = std::move(pair.second);
  }
  const Window& w = E->window();
  const double extent = std::min(w.width(), w.height());
  Point center{0.5 * (w.x0 + w.x1), 0.5 * (w.y0 + w.y1)};
  if (!opt.center.empty()) {
    detail::require(opt.center.size() == 2, "glue: --center needs x,y");
    center = {opt.center[0], opt.center[1]};
  }
  const double r = opt.r.value_or(0.1 * extent);
  const double R = opt.R.value_or(0.45 * extent);
  const double slack = opt.slack.value_or(5.0 / E->resolution());

  OutputSet files("diagnostics_glue", opt.out_dir);
  files.parameters() = {{"e", opt.e_file}, {"f", opt.f_file}, {"seed", opt.seed},
                        {"resolution", E->resolution()}, {"center", {center.x, center.y}},
                        {"r", r}, {"R", R}, {"slack", slack}};
  const GlueResult g = glueing_radius(*E, *F, center, r, R, slack);
  std::ostringstream csv;
  csv << "rho,slice_perimeter,bound,average_slice\n"
      << io::format_double(g.rho) << ',' << io::format_double(g.slice_perimeter) << ','
      << io::format_double(g.bound) << ',' << io::format_double(g.average_slice) << '\n';
  const std::string path = files.write(opt.out_file, csv.str());
  files.finish();
  out << "rho " << io::format_double(g.rho) << '\n'
      << "slice_perimeter " << io::format_double(g.slice_perimeter) << '\n'
      << "bound " << io::format_double(g.bound) << '\n'
      << "average_slice " << io::format_double(g.average_slice) << '\n'
      << "csv " << path << '\n';
  return kOk;
}

struct ProfileOptions {
  std::string grid;
  std::string fixture;
  int resolution = 512;
  int region = 1;
  double cube_size = 1.0;
  std::string out_file = "profile.csv";
  std::string out_dir = default_output_dir();
};

int cmd_profile(const ProfileOptions& opt, std::ostream& out) {
  detail::require(opt.grid.empty() != opt.fixture.empty(), "profile: give exactly one of --grid or --fixture");
  std::optional<GridPartition> E;
  if (!opt.grid.empty()) {
    E = load_grid(opt.grid);
  } else if (opt.fixture == "one-cube") {
    E = fixtures::one_cube(opt.resolution);
  } else if (opt.fixture == "slab") {
    E = fixtures::slab(opt.resolution);
  } else if (opt.fixture == "blob") {
    E = fixtures::blob(opt.resolution);
  } else {
    throw PreconditionError("profile: unknown fixture '" + opt.fixture + "'");
  }
  const ConcentrationProfile prof = concentration_profile(*E, opt.region, opt.cube_size);
  OutputSet files("diagnostics_profile", opt.out_dir);
  files.parameters() = {{"grid", opt.grid}, {"fixture", opt.fixture}, {"resolution", E->resolution()},
                        {"region", opt.region}, {"cube_size", opt.cube_size}};
  std::ostringstream csv;
  io::write_profile_csv(csv, prof);
  const std::string path = files.write(opt.out_file, csv.str());
  files.finish();
  out << "cubes " << prof.sorted_masses.size() << '\n'
      << "total_mass " << io::format_double(prof.total_mass) << '\n'
      << "total_perimeter " << io::format_double(prof.total_perimeter) << '\n'
      << "largest_mass " << io::format_double(prof.sorted_masses.empty() ? 0.0 : prof.sorted_masses.front())
      << '\n'
      << "csv " << path << '\n';
  return kOk;
}

struct FixtureOptions {
  std::uint64_t seed = 1;
  int resolution = 512;
  std::string e_out = "glue_E.grid";
  std::string f_out = "glue_F.grid";
  std::string out_dir = default_output_dir();
};

int cmd_fixture(const FixtureOptions& opt, std::ostream& out) {
  const auto [E, F] = fixtures::random_voronoi_pair(opt.seed, opt.resolution);
  OutputSet files("diagnostics_fixture", opt.out_dir);
  files.parameters() = {{"seed", opt.seed}, {"resolution", opt.resolution}};
  std::ostringstream e_text, f_text;
  io::write_grid(e_text, E);
  io::write_grid(f_text, F);
  out << "e " << files.write(opt.e_out, e_text.str()) << '\n';
  out << "f " << files.write(opt.f_out, f_text.str()) << '\n';
  files.finish();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isoperimetric 3-partitions of R^8: constants, CMC solver and diagnostics", "isopart"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ConstantsOptions constants;
  auto* c = app.add_subcommand("constants", "Closed-form constants with oracle columns");
  c->add_option("--format", constants.format, "csv or json")->capture_default_str();
  c->add_option("--samples", constants.samples, "Monte-Carlo samples for the lens volume")->capture_default_str();
  c->add_option("--seed", constants.seed, "Monte-Carlo seed")->capture_default_str();
  c->add_option("--out", constants.out_file, "Also write the table to this file");
  c->add_option("--out-dir", constants.out_dir, "Output directory (env ISOPART_OUTPUT_DIR)");

  SolveOptions solve;
  double a_lo = 0.0, a_hi = 0.0;
  auto* s = app.add_subcommand("solve", "Solve the constant mean curvature deformed barrel");
  s->add_option("--lambda", solve.lambda, "Mean curvature (sum of principal curvatures) of region 1")
      ->capture_default_str();
  s->add_option("--step", solve.cfg.step, "RK4 step relative to the intercept")->capture_default_str();
  s->add_option("--axis-eps", solve.cfg.axis_eps, "Series patch height relative to the intercept")
      ->capture_default_str();
  auto* lo_opt = s->add_option("--a-lo", a_lo, "Lower intercept bracket (default 3/lambda)");
  auto* hi_opt = s->add_option("--a-hi", a_hi, "Upper intercept bracket (default 8/lambda)");
  s->add_option("--tol-angle", solve.cfg.tol_angle, "Junction angle tolerance (radians)")->capture_default_str();
  s->add_option("--tol-root", solve.cfg.tol_root, "Bisection tolerance on the intercept")->capture_default_str();
  s->add_option("--max-steps", solve.cfg.max_steps, "Integrator step limit")->capture_default_str();
  s->add_option("--truncation-factor", solve.cfg.truncation_factor, "gamma23 length over junction distance")
      ->capture_default_str();
  s->add_option("--out-dir", solve.out_dir, "Output directory (env ISOPART_OUTPUT_DIR)");
  s->add_option("--svg", solve.svg, "Write an SVG picture of the reduced partition");

  MonotonicityOptions mono;
  double mono_R = 0.0;
  auto* m = app.add_subcommand("monotonicity", "Density ratio scan Per(F, B_rho \\ B_R)/rho^7");
  m->add_option("--partition", mono.partition, "simons, barrel, or a partition.json from solve")
      ->capture_default_str();
  auto* R_opt = m->add_option("--R", mono_R, "Base radius (default: radius of region 1)");
  m->add_option("--radii", mono.radii, "lo:hi:n (geometric) or a comma list");
  m->add_option("--slack", mono.slack, "Relative slack for the monotonicity verdict")->capture_default_str();
  m->add_option("--out", mono.out_file, "CSV output")->capture_default_str();
  m->add_option("--out-dir", mono.out_dir, "Output directory (env ISOPART_OUTPUT_DIR)");

  auto* d = app.add_subcommand("diagnostics", "Grid partition diagnostics");
  d->require_subcommand(1);

  GlueOptions glue;
  double glue_r = 0.0, glue_R = 0.0, glue_slack = 0.0;
  auto* g = d->add_subcommand("glue", "Glueing radius selection between two grid partitions");
  g->add_option("--e", glue.e_file, "Grid partition used outside the sphere");
  g->add_option("--f", glue.f_file, "Grid partition used inside the sphere");
  g->add_option("--seed", glue.seed, "Seed of the generated random pair")->capture_default_str();
  g->add_option("--resolution", glue.resolution, "Resolution of the generated random pair")->capture_default_str();
  g->add_option("--center", glue.center, "Sphere center x y")->expected(2)->delimiter(',');
  auto* gr = g->add_option("--r", glue_r, "Inner radius");
  auto* gR = g->add_option("--R", glue_R, "Outer radius");
  auto* gs = g->add_option("--slack", glue_slack, "Relative slack (default 5/resolution)");
  g->add_option("--out", glue.out_file, "CSV output")->capture_default_str();
  g->add_option("--out-dir", glue.out_dir, "Output directory (env ISOPART_OUTPUT_DIR)");

  ProfileOptions profile;
  auto* p = d->add_subcommand("profile", "Sorted per-cube masses of a region");
  p->add_option("--grid", profile.grid, "Grid partition file");
  p->add_option("--fixture", profile.fixture, "one-cube, slab or blob");
  p->add_option("--resolution", profile.resolution, "Fixture resolution")->capture_default_str();
  p->add_option("--region", profile.region, "Region index")->capture_default_str();
  p->add_option("--cube-size", profile.cube_size, "Cube side")->capture_default_str();
  p->add_option("--out", profile.out_file, "CSV output")->capture_default_str();
  p->add_option("--out-dir", profile.out_dir, "Output directory (env ISOPART_OUTPUT_DIR)");

  FixtureOptions fixture;
  auto* f = d->add_subcommand("fixture", "Write a seeded random pair of grid partitions");
  f->add_option("--seed", fixture.seed, "Seed")->capture_default_str();
  f->add_option("--resolution", fixture.resolution, "Resolution")->capture_default_str();
  f->add_option("--e-out", fixture.e_out, "Output for E")->capture_default_str();
  f->add_option("--f-out", fixture.f_out, "Output for F")->capture_default_str();
  f->add_option("--out-dir", fixture.out_dir, "Output directory (env ISOPART_OUTPUT_DIR)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kPrecondition;
  }

  try {
    if (c->parsed()) return cmd_constants(constants, out);
    if (s->parsed()) {
      if (lo_opt->count()) solve.a_lo = a_lo;
      if (hi_opt->count()) solve.a_hi = a_hi;
      return cmd_solve(solve, out);
    }
    if (m->parsed()) {
      if (R_opt->count()) mono.R = mono_R;
      return cmd_monotonicity(mono, out);
    }
    if (g->parsed()) {
      if (gr->count()) glue.r = glue_r;
      if (gR->count()) glue.R = glue_R;
      if (gs->count()) glue.slack = glue_slack;
      return cmd_glue(glue, out);
    }
    if (p->parsed()) return cmd_profile(profile, out);
    if (f->parsed()) return cmd_fixture(fixture, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const GlueingError& e) {
    err << "error: " << e.what() << " (minimal slice " << io::format_double(e.best().slice_perimeter)
        << ", bound " << io::format_double(e.best().bound) << ")\n";
    return kNonConvergence;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kFailed;
}

}  // namespace isopart::cli
