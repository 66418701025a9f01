// End-to-end tests for the command-line binary: spawns the real executable
// (path injected as PONCELET_CLI_PATH) and checks exit codes, stdout text
// and the files it writes.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "poncelet/conic_fit.hpp"
#include "poncelet/report_io.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = "cli_run_stdout.txt";
  const std::string err_path = "cli_run_stderr.txt";
  const std::string cmd = std::string(PONCELET_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), slurp(out_path), slurp(err_path)};
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
  REQUIRE(run_cli("").exit_code == 2);
  REQUIRE(run_cli("frobnicate").exit_code == 2);
  REQUIRE(run_cli("caustic --a 2").exit_code == 2);          // missing --b
  REQUIRE(run_cli("caustic --a 2 --b 1 --tol bogus=1").exit_code == 2);
  REQUIRE(run_cli("caustic --a 2 --b 1 --tol caustic=-1").exit_code == 2);
  REQUIRE(run_cli("caustic --a 2 --b 1 --tol caustic").exit_code == 2);
  REQUIRE(run_cli("locus --a 2 --b 1 --n 32").exit_code == 2);  // n < 64
  REQUIRE(run_cli("locus --a 2 --b 1 --center navel --n 64").exit_code == 2);
  REQUIRE(run_cli("cp2 foci").exit_code == 2);            // no axes at all
  REQUIRE(run_cli("cp2 foci --a 5").exit_code == 2);      // half a pair
  REQUIRE(run_cli("cp2 foci --a 5 --b 3 --a2 25 --b2 9").exit_code == 2);
  REQUIRE(run_cli("cp2 foci --a five --b 3").exit_code == 2);
}

TEST_CASE("domain errors exit with code 1", "[cli]") {
  const RunResult swapped = run_cli("caustic --a 1 --b 2");
  REQUIRE(swapped.exit_code == 1);
  REQUIRE(swapped.err.find("error:") != std::string::npos);
  REQUIRE(run_cli("orbit --a 0 --b 0 --t 1").exit_code == 1);
  REQUIRE(run_cli("cp2 check-confocal --a 5 --b 3 --lam 9").exit_code == 1);
  REQUIRE(run_cli("cp2 foci --a2 -4 --b2 1").exit_code == 1);
}

TEST_CASE("help is not an error", "[cli]") {
  const RunResult help = run_cli("--help");
  REQUIRE(help.exit_code == 0);
  REQUIRE(help.out.find("locus") != std::string::npos);
}

TEST_CASE("caustic and orbit subcommands print their diagnostics", "[cli]") {
  const RunResult caustic = run_cli("caustic --a 2 --b 1");
  REQUIRE(caustic.exit_code == 0);
  REQUIRE(caustic.out.find("lambda_star = 0.98271224485") !=
          std::string::npos);
  REQUIRE(caustic.out.find("caustic_a") != std::string::npos);

  const RunResult orbit = run_cli("orbit --a 2 --b 1 --t 0.7");
  REQUIRE(orbit.exit_code == 0);
  REQUIRE(orbit.out.find("closure_residual") != std::string::npos);
  REQUIRE(orbit.out.find("reflection_residual") != std::string::npos);
  REQUIRE(orbit.out.find("tangency_defect_side3") != std::string::npos);
}

TEST_CASE("locus writes JSON, CSV and SVG artifacts", "[cli]") {
  const RunResult r = run_cli(
      "locus --a 2 --b 1 --center circumcenter --n 128 "
      "--json cli_locus.json --csv cli_locus.csv --svg cli_locus.svg");
  REQUIRE(r.exit_code == 0);

  const Json j = Json::parse(slurp("cli_locus.json"));
  REQUIRE(j["schema"] == 1);
  REQUIRE(j["center_kind"] == "circumcenter");
  REQUIRE(j["class"]["kind"] == "ellipse");
  REQUIRE(j["collapsed"] == false);
  REQUIRE(j["max_residual"].get<double>() <= 1e-8);

  // The CSV samples refit to the JSON-reported conic.
  std::ifstream csv("cli_locus.csv");
  const auto samples = poncelet::io::read_locus_csv(csv);
  REQUIRE(samples.size() == 128);
  std::vector<poncelet::Vec2> points;
  for (const auto& s : samples) points.push_back(s.center);
  const poncelet::ConicCoeffs refit = poncelet::fit_conic(points);
  const poncelet::ConicCoeffs reported =
      poncelet::io::conic_from_json(j["fit"]);
  REQUIRE(std::abs(refit.A - reported.A) <= 1e-12);
  REQUIRE(std::abs(refit.B - reported.B) <= 1e-12);
  REQUIRE(std::abs(refit.C - reported.C) <= 1e-12);
  REQUIRE(std::abs(refit.D - reported.D) <= 1e-12);
  REQUIRE(std::abs(refit.E - reported.E) <= 1e-12);
  REQUIRE(std::abs(refit.F - reported.F) <= 1e-12);

  const std::string svg = slurp("cli_locus.svg");
  REQUIRE(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") !=
          std::string::npos);
  REQUIRE(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("locus on a circle reports the collapse", "[cli]") {
  const RunResult r = run_cli(
      "locus --a 1 --b 1 --center circumcenter --n 64 --json cli_circle.json");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(slurp("cli_circle.json"));
  REQUIRE(j["collapsed"] == true);
  REQUIRE(j["fit"].is_null());
  REQUIRE(j["class"].is_null());
}

TEST_CASE("multiple center kinds become a JSON array", "[cli]") {
  const RunResult r = run_cli(
      "locus --a 2 --b 1 --center centroid,orthocenter --n 64 "
      "--json cli_multi.json");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(slurp("cli_multi.json"));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  REQUIRE(j[0]["center_kind"] == "centroid");
  REQUIRE(j[1]["center_kind"] == "orthocenter");

  // CSV and SVG are single-locus formats.
  REQUIRE(run_cli("locus --a 2 --b 1 --center centroid,orthocenter --n 64 "
                  "--csv cli_multi.csv")
              .exit_code == 2);
}

TEST_CASE("verify passes and emits deterministic JSON", "[cli]") {
  const RunResult first = run_cli("verify --json cli_verify_1.json");
  REQUIRE(first.exit_code == 0);
  for (int i = 1; i <= 9; ++i) {
    REQUIRE(first.out.find("[PASS] " + std::to_string(i) + "/9") !=
            std::string::npos);
  }
  REQUIRE(first.out.find("[FAIL]") == std::string::npos);
  REQUIRE(first.out.find("all 9 criteria passed") != std::string::npos);

  const RunResult second = run_cli("verify --json cli_verify_2.json");
  REQUIRE(second.exit_code == 0);
  REQUIRE(slurp("cli_verify_1.json") == slurp("cli_verify_2.json"));

  const Json j = Json::parse(slurp("cli_verify_1.json"));
  REQUIRE(j["schema"] == 1);
  REQUIRE(j["seed"] == 12345);
  REQUIRE(j["criteria"].size() == 9);
  REQUIRE(j["passed"] == true);
}

TEST_CASE("verify honors the seed flag", "[cli]") {
  const RunResult r = run_cli("verify --seed 99991");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("cp2 foci prints the exact focal points", "[cli]") {
  const RunResult r = run_cli("cp2 foci --a 5 --b 3");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "(4,0)\n(-4,0)\n(0,4i)\n(0,-4i)\n");

  // Same conic by squared axes.
  REQUIRE(run_cli("cp2 foci --a2 25 --b2 9").out == r.out);

  // Rational input stays exact: a = 5/2, b = 3/2 has focal distance 2.
  const RunResult halves = run_cli("cp2 foci --a 5/2 --b 3/2");
  REQUIRE(halves.exit_code == 0);
  REQUIRE(halves.out == "(2,0)\n(-2,0)\n(0,2i)\n(0,-2i)\n");

  // Decimal flags parse as exact rationals: 2.5 = 5/2.
  REQUIRE(run_cli("cp2 foci --a 2.5 --b 1.5").out == halves.out);
}

TEST_CASE("cp2 tangents agree for confocal ellipses", "[cli]") {
  const RunResult base = run_cli("cp2 tangents --a 5 --b 3");
  REQUIRE(base.exit_code == 0);
  REQUIRE(base.out ==
          "[1 : i : 4]\n[1 : i : -4]\n[1 : -i : -4]\n[1 : -i : 4]\n");
  REQUIRE(run_cli("cp2 tangents --a2 20 --b2 4").out == base.out);
}

TEST_CASE("cp2 check-confocal verifies the tangent-set invariance", "[cli]") {
  const RunResult r = run_cli("cp2 check-confocal --a 5 --b 3 --lam 5");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("tangent sets match: yes") != std::string::npos);
  REQUIRE(run_cli("cp2 check-confocal --a 5 --b 3 --lam 44/5").exit_code ==
          0);
  REQUIRE(run_cli("cp2 check-confocal --a2 25 --b2 9 --lam 0").exit_code ==
          0);
}

TEST_CASE("irrational foci are a domain error with the witness polynomial",
          "[cli]") {
  const RunResult r = run_cli("cp2 foci --a 2 --b 1");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.err.find("minimal polynomial") != std::string::npos);
}

}  // namespace
