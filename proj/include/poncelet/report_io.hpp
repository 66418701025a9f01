#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poncelet/billiard.hpp"
#include "poncelet/locus.hpp"

// File formats of the CLI: JSON locus reports (schema 1), t/x/y CSV sample
// dumps, and static SVG 1.1 figures.
namespace poncelet::io {

using Json = nlohmann::ordered_json;

// 17 significant digits: enough to round-trip an IEEE double exactly.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline Json vec_json(Vec2 p) { return Json::array({p.x, p.y}); }

inline Json locus_report_json(const LocusReport& rep,
                              const std::map<std::string, double>& tolerances) {
  Json j;
  j["schema"] = 1;
  j["ellipse"] = {{"a", rep.ellipse.a}, {"b", rep.ellipse.b}};
  j["center_kind"] = to_string(rep.kind);
  j["n"] = rep.n;
  j["caustic"] = {{"lambda", rep.caustic.lambda_star},
                  {"a", rep.caustic.caustic.a},
                  {"b", rep.caustic.caustic.b}};
  if (rep.fit) {
    j["fit"] = Json::array({rep.fit->A, rep.fit->B, rep.fit->C, rep.fit->D,
                            rep.fit->E, rep.fit->F});
  } else {
    j["fit"] = nullptr;
  }
  if (rep.conic_class) {
    const ConicClass& cls = *rep.conic_class;
    Json cj;
    cj["kind"] = to_string(cls.kind);
    cj["center"] = cls.center ? vec_json(*cls.center) : Json(nullptr);
    cj["axis_angle"] = cls.axis_angle;
    cj["semi_major"] = cls.semi_major;
    cj["semi_minor"] = cls.semi_minor;
    j["class"] = cj;
  } else {
    j["class"] = nullptr;
  }
  j["max_residual"] = rep.max_residual;
  j["symmetry_defect"] = rep.symmetry_defect;
  if (rep.foci_line_points) {
    j["foci_line_points"] = Json::array({vec_json(rep.foci_line_points->first),
                                         vec_json(rep.foci_line_points->second)});
  } else {
    j["foci_line_points"] = nullptr;
  }
  j["collapsed"] = rep.collapsed;
  j["tolerances"] = tolerances;
  return j;
}

inline ConicCoeffs conic_from_json(const Json& fit) {
  if (!fit.is_array() || fit.size() != 6) {
    throw std::invalid_argument("conic_from_json: expected a 6-element array");
  }
  return {fit[0].get<double>(), fit[1].get<double>(), fit[2].get<double>(),
          fit[3].get<double>(), fit[4].get<double>(), fit[5].get<double>()};
}

inline std::string locus_csv(const std::vector<LocusSample>& samples) {
  std::string out = "t,x,y\n";
  for (const LocusSample& s : samples) {
    out += fmt17(s.t) + "," + fmt17(s.center.x) + "," + fmt17(s.center.y) +
           "\n";
  }
  return out;
}

inline std::vector<LocusSample> read_locus_csv(std::istream& in) {
  std::vector<LocusSample> samples;
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x,y", 0) != 0) {
    throw std::invalid_argument("read_locus_csv: missing t,x,y header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    LocusSample s{};
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &s.t, &s.center.x,
                    &s.center.y) != 3) {
      throw std::invalid_argument("read_locus_csv: malformed row: " + line);
    }
    samples.push_back(s);
  }
  return samples;
}

namespace detail {

inline std::string svg_ellipse(double rx, double ry, const char* stroke,
                               double stroke_width) {
  std::ostringstream out;
  out << "  <ellipse cx=\"0\" cy=\"0\" rx=\"" << fmt17(rx) << "\" ry=\""
      << fmt17(ry) << "\" fill=\"none\" stroke=\"" << stroke
      << "\" stroke-width=\"" << fmt17(stroke_width) << "\"/>\n";
  return out.str();
}

}  // namespace detail

// Static figure: the billiard ellipse, the caustic, a few sample triangles,
// and the locus polyline.  Y points up via a flip transform; the viewBox is
// symmetric so the flip needs no re-centering.
inline std::string locus_svg(const Ellipse& e, const Ellipse& caustic,
                             const std::vector<LocusSample>& samples,
                             const std::vector<Orbit>& triangles) {
  double x_max = e.a, y_max = e.b;
  for (const LocusSample& s : samples) {
    x_max = std::max(x_max, std::abs(s.center.x));
    y_max = std::max(y_max, std::abs(s.center.y));
  }
  x_max *= 1.08;
  y_max *= 1.08;
  const double stroke = 0.004 * std::max(x_max, y_max);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"800\" height=\"" << fmt17(800.0 * y_max / x_max)
      << "\" viewBox=\"" << fmt17(-x_max) << " " << fmt17(-y_max) << " "
      << fmt17(2.0 * x_max) << " " << fmt17(2.0 * y_max) << "\">\n"
      << "<g transform=\"scale(1,-1)\">\n";
  out << detail::svg_ellipse(e.a, e.b, "#1f77b4", stroke);
  out << detail::svg_ellipse(caustic.a, caustic.b, "#2ca02c", stroke);
  for (const Orbit& o : triangles) {
    out << "  <polygon points=\"";
    for (int i = 0; i < 3; ++i) {
      out << fmt17(o.v[static_cast<std::size_t>(i)].x) << ","
          << fmt17(o.v[static_cast<std::size_t>(i)].y)
          << (i < 2 ? " " : "");
    }
    out << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\""
        << fmt17(0.5 * stroke) << "\"/>\n";
  }
  out << "  <polyline points=\"";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << fmt17(samples[i].center.x) << "," << fmt17(samples[i].center.y)
        << (i + 1 < samples.size() ? " " : "");
  }
  out << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\""
      << fmt17(stroke) << "\"/>\n";
  out << "</g>\n</svg>\n";
  return out.str();
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace poncelet::io
