#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "poncelet/locus.hpp"
#include "poncelet/report_io.hpp"

namespace {

using poncelet::CenterKind;
using poncelet::ConicCoeffs;
using poncelet::Ellipse;
using poncelet::LocusReport;
using poncelet::LocusSample;
using poncelet::Orbit;
using poncelet::Vec2;
using Json = poncelet::io::Json;

const std::map<std::string, double> kTols{{"caustic", 1e-10},
                                          {"closure", 1e-9},
                                          {"collapse", 1e-9},
                                          {"fit_residual", 1e-8},
                                          {"symmetry", 1e-8}};

TEST_CASE("17 significant digits round-trip doubles exactly", "[io]") {
  for (const double v : {0.1, 1.0 / 3.0, 0.9827122448568794, -2.5e-17,
                         123456789.123456789}) {
    const std::string s = poncelet::io::fmt17(v);
    REQUIRE(std::stod(s) == v);
  }
  REQUIRE(poncelet::io::fmt17(0.1) == "0.10000000000000001");
}

TEST_CASE("locus reports serialize with the fixed schema", "[io]") {
  const LocusReport rep =
      poncelet::locus_report(Ellipse(2.0, 1.0), CenterKind::circumcenter, 128);
  const Json j = poncelet::io::locus_report_json(rep, kTols);

  REQUIRE(j["schema"] == 1);
  REQUIRE(j["ellipse"]["a"] == 2.0);
  REQUIRE(j["ellipse"]["b"] == 1.0);
  REQUIRE(j["center_kind"] == "circumcenter");
  REQUIRE(j["n"] == 128);
  REQUIRE(j["caustic"]["lambda"].get<double>() ==
          Catch::Approx(0.9827122448568794).margin(1e-9));
  REQUIRE(j["fit"].is_array());
  REQUIRE(j["fit"].size() == 6);
  REQUIRE(j["class"]["kind"] == "ellipse");
  REQUIRE(j["class"]["center"].is_array());
  REQUIRE(j["max_residual"].get<double>() <= 1e-8);
  REQUIRE(j["symmetry_defect"].get<double>() <= 1e-8);
  REQUIRE(j["foci_line_points"].is_array());
  REQUIRE(j["collapsed"] == false);
  REQUIRE(j["tolerances"]["caustic"] == 1e-10);

  // The schema fields arrive in their documented order.
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  REQUIRE(keys == std::vector<std::string>{
                      "schema", "ellipse", "center_kind", "n", "caustic",
                      "fit", "class", "max_residual", "symmetry_defect",
                      "foci_line_points", "collapsed", "tolerances"});

  // Binary-exact coefficient round trip through the JSON text.
  const Json reparsed = Json::parse(j.dump());
  const ConicCoeffs back = poncelet::io::conic_from_json(reparsed["fit"]);
  REQUIRE(back.A == rep.fit->A);
  REQUIRE(back.B == rep.fit->B);
  REQUIRE(back.C == rep.fit->C);
  REQUIRE(back.D == rep.fit->D);
  REQUIRE(back.E == rep.fit->E);
  REQUIRE(back.F == rep.fit->F);
}

TEST_CASE("collapsed reports use JSON nulls", "[io]") {
  const LocusReport rep =
      poncelet::locus_report(Ellipse(1.0, 1.0), CenterKind::incenter, 64);
  const Json j = poncelet::io::locus_report_json(rep, kTols);
  REQUIRE(j["collapsed"] == true);
  REQUIRE(j["fit"].is_null());
  REQUIRE(j["class"].is_null());
  REQUIRE(j["foci_line_points"].is_null());
}

TEST_CASE("report generation is deterministic", "[io]") {
  const auto dump_once = [] {
    const LocusReport rep = poncelet::locus_report(
        Ellipse(2.0, 1.0), CenterKind::circumcenter, 128);
    return poncelet::io::locus_report_json(rep, kTols).dump(2);
  };
  REQUIRE(dump_once() == dump_once());
}

TEST_CASE("conic_from_json validates its shape", "[io]") {
  REQUIRE_THROWS_AS(poncelet::io::conic_from_json(Json::parse("[1,2,3]")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(poncelet::io::conic_from_json(Json::parse("{}")),
                    std::invalid_argument);
}

TEST_CASE("CSV samples round-trip and refit to the same conic", "[io]") {
  const LocusReport rep =
      poncelet::locus_report(Ellipse(2.0, 1.0), CenterKind::circumcenter, 128);
  const std::string csv = poncelet::io::locus_csv(rep.samples);
  REQUIRE(csv.rfind("t,x,y\n", 0) == 0);

  std::istringstream in(csv);
  const std::vector<LocusSample> back = poncelet::io::read_locus_csv(in);
  REQUIRE(back.size() == rep.samples.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    REQUIRE(back[i].t == rep.samples[i].t);
    REQUIRE(back[i].center.x == rep.samples[i].center.x);
    REQUIRE(back[i].center.y == rep.samples[i].center.y);
  }

  std::vector<Vec2> points;
  for (const LocusSample& s : back) points.push_back(s.center);
  const ConicCoeffs refit = poncelet::fit_conic(points);
  REQUIRE(std::abs(refit.A - rep.fit->A) <= 1e-12);
  REQUIRE(std::abs(refit.B - rep.fit->B) <= 1e-12);
  REQUIRE(std::abs(refit.C - rep.fit->C) <= 1e-12);
  REQUIRE(std::abs(refit.D - rep.fit->D) <= 1e-12);
  REQUIRE(std::abs(refit.E - rep.fit->E) <= 1e-12);
  REQUIRE(std::abs(refit.F - rep.fit->F) <= 1e-12);
}

TEST_CASE("CSV reader rejects malformed input", "[io]") {
  std::istringstream missing_header("1,2,3\n");
  REQUIRE_THROWS_AS(poncelet::io::read_locus_csv(missing_header),
                    std::invalid_argument);
  std::istringstream bad_row("t,x,y\n0.1,nope\n");
  REQUIRE_THROWS_AS(poncelet::io::read_locus_csv(bad_row),
                    std::invalid_argument);
}

TEST_CASE("SVG figures contain the document skeleton", "[io]") {
  const Ellipse e(2.0, 1.0);
  const auto caustic = poncelet::find_caustic(e);
  const auto samples =
      poncelet::sample_locus(e, caustic.caustic, CenterKind::circumcenter, 64);
  std::vector<Orbit> triangles;
  for (int k = 0; k < 4; ++k) {
    triangles.push_back(poncelet::poncelet_triangle(
        e, caustic.caustic, poncelet::kTwoPi * k / 4.0));
  }
  const std::string svg =
      poncelet::io::locus_svg(e, caustic.caustic, samples, triangles);
  REQUIRE(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" "
                   "version=\"1.1\"") != std::string::npos);
  REQUIRE(svg.find("<ellipse") != std::string::npos);
  REQUIRE(svg.find("<polygon") != std::string::npos);
  REQUIRE(svg.find("<polyline") != std::string::npos);
  REQUIRE(svg.find("</svg>") != std::string::npos);
  REQUIRE(svg.find("nan") == std::string::npos);
}

TEST_CASE("text files write and fail loudly", "[io]") {
  const std::string path = "io_test_scratch.txt";
  poncelet::io::write_text_file(path, "hello\n");
  std::ifstream in(path);
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  REQUIRE(body == "hello\n");
  REQUIRE_THROWS_AS(
      poncelet::io::write_text_file("no_such_dir/impossible.txt", "x"),
      std::runtime_error);
}

}  // namespace
