#ifndef ISOPART_IO_HPP_
#define ISOPART_IO_HPP_

/*!
 * \file
 * \brief File formats: curve/trajectory/scan CSV, grid partitions (JSON
 *        header line followed by CSV label rows), partition and report
 *        JSON, and the SVG picture of a reduced partition.
 *
 * Numbers are written with 17 significant digits and '.' as decimal
 * separator regardless of locale, so outputs are byte-reproducible.
 */

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "isopart/asymptotics.hpp"
#include "isopart/cmc_solver.hpp"
#include "isopart/errors.hpp"
#include "isopart/grid_partition.hpp"
#include "isopart/partition3.hpp"
#include "isopart/partition_ops.hpp"
#include "isopart/reduced_plane.hpp"

namespace isopart::io {

using nlohmann::json;

/// Shortest round-trip text would vary in length; use a fixed 17 digits.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r' || last[-1] == '\t')) --last;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw PreconditionError("parse_double: not a number: '" + text + "'");
  }
  return v;
}

inline std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  detail::require(static_cast<bool>(out), "cannot open output file: " + path);
  return out;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  detail::require(static_cast<bool>(in), "cannot open input file: " + path);
  return in;
}

// ---- curves -----------------------------------------------------------------

inline void write_curve_csv(std::ostream& out, const ReducedCurve& c) {
  out << "x,y\n";
  for (Point p : c.points()) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

inline ReducedCurve read_curve_csv(std::istream& in) {
  std::string line;
  std::vector<Point> pts;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (header) {
      header = false;
      if (line.rfind("x,y", 0) == 0) continue;
    }
    const auto f = split(line);
    detail::require(f.size() == 2, "read_curve_csv: expected two columns");
    pts.push_back({parse_double(f[0]), parse_double(f[1])});
  }
  return ReducedCurve(std::move(pts));
}

inline void write_trajectory_csv(std::ostream& out, const std::vector<ShootState>& traj) {
  out << "s,x,y,theta\n";
  for (const auto& st : traj) {
    out << format_double(st.s) << ',' << format_double(st.x) << ','
        << format_double(st.y) << ',' << format_double(st.theta) << '\n';
  }
}

inline void write_scan_csv(std::ostream& out, const DensityScan& scan) {
  out << "rho,ratio,full_ratio\n";
  for (std::size_t i = 0; i < scan.radii.size(); ++i) {
    out << format_double(scan.radii[i]) << ',' << format_double(scan.ratios[i]) << ','
        << format_double(scan.full_ratios[i]) << '\n';
  }
}

inline void write_profile_csv(std::ostream& out, const ConcentrationProfile& p) {
  out << "n,mass,tail_sum\n";
  for (std::size_t i = 0; i < p.tail_sums.size(); ++i) {
    const double m = i < p.sorted_masses.size() ? p.sorted_masses[i] : 0.0;
    out << i << ',' << format_double(m) << ',' << format_double(p.tail_sums[i]) << '\n';
  }
}

// ---- grid partitions --------------------------------------------------------

inline void write_grid(std::ostream& out, const GridPartition& g) {
  // The header is written by hand so that numbers follow format_double.
  const Window& w = g.window();
  out << "{\"window\":[" << format_double(w.x0) << ',' << format_double(w.y0) << ','
      << format_double(w.x1) << ',' << format_double(w.y1) << "],\"resolution\":"
      << g.resolution() << ",\"num_regions\":" << g.num_regions() << ",\"weight_mode\":\""
      << (g.weight_mode() == WeightMode::weighted ? "weighted" : "unweighted") << "\"}\n";
  const int n = g.resolution();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i) out << ',';
      out << g.label(i, j);
    }
    out << '\n';
  }
}

inline GridPartition read_grid(std::istream& in) {
  std::string line;
  detail::require(static_cast<bool>(std::getline(in, line)), "read_grid: missing header");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("read_grid: bad header: ") + e.what());
  }
  try {
    const auto win = header.at("window").get<std::vector<double>>();
    detail::require(win.size() == 4, "read_grid: window needs 4 numbers");
    const int n = header.at("resolution").get<int>();
    const int regions = header.value("num_regions", 3);
    const std::string mode = header.at("weight_mode").get<std::string>();
    detail::require(mode == "weighted" || mode == "unweighted", "read_grid: bad weight_mode");
    detail::require(n > 0, "read_grid: resolution must be positive");
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(n) * n);
    while (std::getline(in, line)) {
      if (line.empty() || line == "\r") continue;
      const auto f = split(line);
      detail::require(static_cast<int>(f.size()) == n, "read_grid: row length mismatch");
      for (const auto& s : f) labels.push_back(static_cast<int>(parse_double(s)));
    }
    return GridPartition({win[0], win[1], win[2], win[3]}, n, regions,
                         mode == "weighted" ? WeightMode::weighted : WeightMode::unweighted,
                         std::move(labels));
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("read_grid: bad header: ") + e.what());
  }
}

// ---- partitions and reports -------------------------------------------------

inline json to_json(const ReducedCurve& c) {
  json pts = json::array();
  for (Point p : c.points()) pts.push_back({p.x, p.y});
  return pts;
}

inline ReducedCurve curve_from_json(const json& j) {
  std::vector<Point> pts;
  for (const auto& p : j) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return ReducedCurve(std::move(pts));
}

inline json to_json(const ReducedPartition3& p) {
  return json{
      {"gamma12", to_json(p.gamma12)},
      {"gamma13", to_json(p.gamma13)},
      {"gamma23", to_json(p.gamma23)},
      {"junction", {p.junction.x, p.junction.y}},
      {"truncation_radius", p.truncation_radius},
      {"symmetric", p.symmetric},
      {"region_labels",
       {{"gamma12", {{"left", p.sides12.left}, {"right", p.sides12.right}}},
        {"gamma13", {{"left", p.sides13.left}, {"right", p.sides13.right}}},
        {"gamma23", {{"left", p.sides23.left}, {"right", p.sides23.right}}}}},
  };
}

inline ReducedPartition3 partition_from_json(const json& j) {
  try {
    ReducedPartition3 p;
    p.gamma12 = curve_from_json(j.at("gamma12"));
    p.gamma13 = curve_from_json(j.at("gamma13"));
    p.gamma23 = curve_from_json(j.at("gamma23"));
    p.junction = {j.at("junction").at(0).get<double>(), j.at("junction").at(1).get<double>()};
    p.truncation_radius = j.at("truncation_radius").get<double>();
    p.symmetric = j.value("symmetric", true);
    validate(p);
    return p;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("partition_from_json: ") + e.what());
  }
}

inline json to_json(const DefectReport& r) {
  return json{
      {"perimeter_E1", r.perimeter_E1},
      {"volume_E1", r.volume_E1},
      {"cone_inside", r.cone_inside},
      {"defect", r.defect},
      {"lambda", r.lambda},
      {"intercept_a", r.intercept_a},
      {"junction", {r.junction.x, r.junction.y}},
      {"junction_residual", r.junction_residual},
      {"iterations", r.iterations},
  };
}

/// JSON text with every float printed at 17 significant digits.
inline std::string dump(const json& j, int indent = 2) {
  // nlohmann prints the shortest round-trip form; re-emit floats by hand.
  std::ostringstream out;
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto rec = [&](auto&& self, const json& v, int depth) -> void {
    const std::string in(static_cast<std::size_t>(depth + 1) * pad.size(), ' ');
    const std::string out_pad(static_cast<std::size_t>(depth) * pad.size(), ' ');
    if (v.is_object()) {
      if (v.empty()) { out << "{}"; return; }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << in << json(it.key()).dump() << ": ";
        self(self, it.value(), depth + 1);
      }
      out << '\n' << out_pad << '}';
    } else if (v.is_array()) {
      if (v.empty()) { out << "[]"; return; }
      const bool flat = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
      out << '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out << (flat ? ", " : ",");
        if (!flat) out << '\n' << in;
        first = false;
        self(self, e, depth + 1);
      }
      if (!flat) out << '\n' << out_pad;
      out << ']';
    } else if (v.is_number_float()) {
      out << format_double(v.get<double>());
    } else {
      out << v.dump();
    }
  };
  rec(rec, j, 0);
  out << '\n';
  return out.str();
}

// ---- SVG --------------------------------------------------------------------

/// Reduced quadrant with axes, diagonal, interfaces and junction marker.
inline void write_svg(std::ostream& out, const ReducedPartition3& p, double extent = 0.0) {
  if (extent <= 0.0) extent = 1.6 * std::max(norm(p.junction), p.bounded_region_radius());
  if (extent <= 0.0) extent = 1.0;
  constexpr double size = 600.0;
  constexpr double margin = 40.0;
  const double scale = (size - 2.0 * margin) / extent;
  auto X = [&](double x) { return format_double(margin + scale * x); };
  auto Y = [&](double y) { return format_double(size - margin - scale * y); };
  auto polyline = [&](const ReducedCurve& c, const char* color, const char* id) {
    if (c.empty()) return;
    out << "  <polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (Point q : c.points()) {
      if (std::max(q.x, q.y) > 1.05 * extent) break;
      if (!first) out << ' ';
      first = false;
      out << X(q.x) << ',' << Y(q.y);
    }
    out << "\"/>\n";
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  out << "  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  out << "  <line id=\"x-axis\" x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(extent)
      << "\" y2=\"" << Y(0) << "\" stroke=\"black\"/>\n";
  out << "  <line id=\"y-axis\" x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0)
      << "\" y2=\"" << Y(extent) << "\" stroke=\"black\"/>\n";
  out << "  <line id=\"diagonal\" x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(extent)
      << "\" y2=\"" << Y(extent) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  polyline(p.gamma12, "#1f77b4", "gamma12");
  polyline(p.gamma13, "#1f77b4", "gamma13");
  ReducedPartition3 drawn = p;
  const double reach = extent * std::numbers::sqrt2;
  if (norm(p.junction) < reach) drawn = with_truncation(p, reach);
  polyline(drawn.gamma23, "#d62728", "gamma23");
  out << "  <circle id=\"junction\" cx=\"" << X(p.junction.x) << "\" cy=\"" << Y(p.junction.y)
      << "\" r=\"4\" fill=\"black\"/>\n";
  out << "  <text x=\"" << X(0.15 * extent) << "\" y=\"" << Y(0.15 * extent) << "\">E1</text>\n";
  out << "  <text x=\"" << X(0.3 * extent) << "\" y=\"" << Y(0.9 * extent) << "\">E2</text>\n";
  out << "  <text x=\"" << X(0.9 * extent) << "\" y=\"" << Y(0.3 * extent) << "\">E3</text>\n";
  out << "</svg>\n";
}

}  // namespace isopart::io

#endif  // ISOPART_IO_HPP_
