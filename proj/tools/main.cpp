// Command-line surface: caustic solving, single orbits, center loci with
// JSON/CSV/SVG reports, the acceptance suite, and exact projective queries.
//
// Exit codes: 0 ok, 1 domain error, 2 usage error, 3 verification failure.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "poncelet/billiard.hpp"
#include "poncelet/cp2.hpp"
#include "poncelet/locus.hpp"
#include "poncelet/report_io.hpp"
#include "poncelet/verify.hpp"

namespace {

using poncelet::CausticResult;
using poncelet::CenterKind;
using poncelet::Ellipse;
using poncelet::LocusReport;
using poncelet::Orbit;
using Json = poncelet::io::Json;

// Flag-value problems discovered after CLI11 parsing (bad tolerance names,
// malformed rationals, incompatible flag combinations).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::map<std::string, double> default_tolerances() {
  return {{"caustic", 1e-10},
          {"closure", 1e-9},
          {"collapse", 1e-9},
          {"fit_residual", 1e-8},
          {"symmetry", 1e-8}};
}

std::map<std::string, double> parse_tolerances(
    const std::vector<std::string>& raw) {
  std::map<std::string, double> tol = default_tolerances();
  for (const std::string& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--tol expects name=value, got '" + item + "'");
    }
    const std::string name = item.substr(0, eq);
    if (tol.find(name) == tol.end()) {
      throw UsageError("unknown tolerance '" + name + "'");
    }
    char* end = nullptr;
    const double value = std::strtod(item.c_str() + eq + 1, &end);
    if (end == item.c_str() + eq + 1 || *end != '\0' || !(value > 0.0)) {
      throw UsageError("tolerance '" + name + "' needs a positive real value");
    }
    tol[name] = value;
  }
  return tol;
}

// Accepts "5", "-5", "2.5", "1/3", "-22/7".
poncelet::cp2::Rational parse_rational(const std::string& s) {
  using poncelet::cp2::Int;
  using poncelet::cp2::Rational;
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const Int num(s.substr(0, slash));
      const Int den(s.substr(slash + 1));
      if (den == 0) throw UsageError("rational '" + s + "' divides by zero");
      return Rational(num, den);
    }
    const auto point = s.find('.');
    if (point != std::string::npos) {
      const std::string head = s.substr(0, point);
      const std::string tail = s.substr(point + 1);
      if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("malformed decimal '" + s + "'");
      }
      Int scale = 1;
      for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
      const bool negative = !head.empty() && head[0] == '-';
      const Int whole(head.empty() || head == "-" || head == "+" ? "0" : head);
      const Int frac(tail);
      const Int numerator = whole * scale + (negative ? -frac : frac);
      return Rational(numerator, scale);
    }
    return Rational(Int(s));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("cannot parse rational '" + s + "'");
  }
}

std::string fmt(double v) { return poncelet::io::fmt17(v); }

int run_caustic(double a, double b, const std::vector<std::string>& tol_raw) {
  const auto tol = parse_tolerances(tol_raw);
  const Ellipse e(a, b);
  const CausticResult r = poncelet::find_caustic(e, tol.at("caustic"));
  std::cout << "lambda_star = " << fmt(r.lambda_star) << "\n"
            << "caustic_a   = " << fmt(r.caustic.a) << "\n"
            << "caustic_b   = " << fmt(r.caustic.b) << "\n"
            << "bracket     = [" << fmt(r.bracket.first) << ", "
            << fmt(r.bracket.second) << "]\n"
            << "residual    = " << fmt(r.residual_at_solution) << "\n";
  return 0;
}

int run_orbit(double a, double b, double t,
              const std::vector<std::string>& tol_raw) {
  const auto tol = parse_tolerances(tol_raw);
  const Ellipse e(a, b);
  const CausticResult caustic = poncelet::find_caustic(e, tol.at("caustic"));
  const Orbit o = poncelet::poncelet_triangle(e, caustic.caustic, t);
  std::cout << "lambda_star = " << fmt(caustic.lambda_star) << "\n";
  for (int i = 0; i < 3; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    std::cout << "t" << i + 1 << " = " << fmt(o.t[idx]) << "  v" << i + 1
              << " = (" << fmt(o.v[idx].x) << ", " << fmt(o.v[idx].y)
              << ")\n";
  }
  std::cout << "closure_residual    = " << fmt(o.closure_residual) << "\n"
            << "reflection_residual = "
            << fmt(poncelet::reflection_residual(e, o)) << "\n";
  for (int i = 0; i < 3; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto next = static_cast<std::size_t>((i + 1) % 3);
    std::cout << "tangency_defect_side" << i + 1 << " = "
              << fmt(poncelet::chord_tangency_defect(caustic.caustic,
                                                     o.v[idx], o.v[next]))
              << "\n";
  }
  return 0;
}

int run_locus(double a, double b, const std::vector<std::string>& centers_raw,
              std::size_t n, const std::string& json_path,
              const std::string& csv_path, const std::string& svg_path,
              const std::vector<std::string>& tol_raw) {
  const auto tol = parse_tolerances(tol_raw);
  std::vector<CenterKind> kinds;
  for (const std::string& name : centers_raw) {
    const auto kind = poncelet::center_kind_from_string(name);
    if (!kind) throw UsageError("unknown center kind '" + name + "'");
    kinds.push_back(*kind);
  }
  if (kinds.size() != 1 && (!csv_path.empty() || !svg_path.empty())) {
    throw UsageError("--csv/--svg need exactly one --center kind");
  }

  const Ellipse e(a, b);
  Json json_reports = Json::array();
  for (const CenterKind kind : kinds) {
    const LocusReport rep =
        poncelet::locus_report(e, kind, n, tol.at("caustic"), tol.at("collapse"));
    std::cout << "center_kind     = " << poncelet::to_string(kind) << "\n"
              << "n               = " << rep.n << "\n"
              << "lambda_star     = " << fmt(rep.caustic.lambda_star) << "\n"
              << "collapsed       = " << (rep.collapsed ? "true" : "false")
              << "\n";
    if (rep.conic_class) {
      std::cout << "class           = "
                << poncelet::to_string(rep.conic_class->kind) << "\n"
                << "semi_major      = " << fmt(rep.conic_class->semi_major)
                << "\n"
                << "semi_minor      = " << fmt(rep.conic_class->semi_minor)
                << "\n"
                << "max_residual    = " << fmt(rep.max_residual) << "\n"
                << "symmetry_defect = " << fmt(rep.symmetry_defect) << "\n";
    }
    json_reports.push_back(poncelet::io::locus_report_json(rep, tol));

    if (!csv_path.empty()) {
      poncelet::io::write_text_file(csv_path,
                                    poncelet::io::locus_csv(rep.samples));
    }
    if (!svg_path.empty()) {
      std::vector<Orbit> triangles;
      for (int k = 0; k < 12; ++k) {
        triangles.push_back(poncelet::poncelet_triangle(
            e, rep.caustic.caustic, poncelet::kTwoPi * k / 12.0));
      }
      poncelet::io::write_text_file(
          svg_path, poncelet::io::locus_svg(e, rep.caustic.caustic,
                                            rep.samples, triangles));
    }
  }
  if (!json_path.empty()) {
    const Json& payload =
        json_reports.size() == 1 ? json_reports[0] : json_reports;
    poncelet::io::write_text_file(json_path, payload.dump(2) + "\n");
  }
  return 0;
}

int run_verify(unsigned int seed, const std::string& json_path) {
  const auto results =
      poncelet::verify::run_acceptance(poncelet::verify::VerifyOptions{seed});
  bool all_passed = true;
  std::vector<std::string> failing;
  for (const auto& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.index << "/9 "
              << r.name << ": " << r.detail << "\n";
    if (!r.passed) {
      all_passed = false;
      failing.push_back(r.name);
    }
  }
  if (!json_path.empty()) {
    Json j;
    j["schema"] = 1;
    j["seed"] = seed;
    j["criteria"] = Json::array();
    for (const auto& r : results) {
      j["criteria"].push_back({{"index", r.index},
                               {"name", r.name},
                               {"passed", r.passed},
                               {"detail", r.detail}});
    }
    j["passed"] = all_passed;
    poncelet::io::write_text_file(json_path, j.dump(2) + "\n");
  }
  if (!all_passed) {
    std::cerr << "verification failed:";
    for (const std::string& name : failing) std::cerr << " " << name;
    std::cerr << "\n";
    return 3;
  }
  std::cout << "all 9 criteria passed\n";
  return 0;
}

poncelet::cp2::ConicMat conic_from_flags(const std::string& a_str,
                                         const std::string& b_str,
                                         const std::string& a2_str,
                                         const std::string& b2_str) {
  using poncelet::cp2::ConicMat;
  using poncelet::cp2::Rational;
  const bool by_axes = !a_str.empty() || !b_str.empty();
  const bool by_squares = !a2_str.empty() || !b2_str.empty();
  if (by_axes == by_squares) {
    throw UsageError("give either --a/--b or --a2/--b2");
  }
  if (by_axes) {
    if (a_str.empty() || b_str.empty()) {
      throw UsageError("--a and --b must be given together");
    }
    const Rational a = parse_rational(a_str);
    const Rational b = parse_rational(b_str);
    return ConicMat::ellipse_from_squares(a * a, b * b);
  }
  if (a2_str.empty() || b2_str.empty()) {
    throw UsageError("--a2 and --b2 must be given together");
  }
  return ConicMat::ellipse_from_squares(parse_rational(a2_str),
                                        parse_rational(b2_str));
}

int run_cp2_foci(const poncelet::cp2::ConicMat& conic) {
  for (const auto& focus : poncelet::cp2::foci(conic)) {
    std::cout << poncelet::cp2::to_string(focus) << "\n";
  }
  return 0;
}

int run_cp2_tangents(const poncelet::cp2::ConicMat& conic) {
  for (const auto& tangent : poncelet::cp2::isotropic_tangents(conic)) {
    std::cout << poncelet::cp2::to_string(tangent) << "\n";
  }
  return 0;
}

int run_cp2_check_confocal(const std::string& a_str, const std::string& b_str,
                           const std::string& a2_str,
                           const std::string& b2_str,
                           const std::string& lam_str) {
  using poncelet::cp2::ConicMat;
  using poncelet::cp2::Rational;
  Rational a2, b2;
  if (!a2_str.empty() || !b2_str.empty()) {
    if (a2_str.empty() || b2_str.empty()) {
      throw UsageError("--a2 and --b2 must be given together");
    }
    a2 = parse_rational(a2_str);
    b2 = parse_rational(b2_str);
  } else {
    if (a_str.empty() || b_str.empty()) {
      throw UsageError("give either --a/--b or --a2/--b2");
    }
    const Rational a = parse_rational(a_str);
    const Rational b = parse_rational(b_str);
    a2 = a * a;
    b2 = b * b;
  }
  const Rational lam = parse_rational(lam_str);
  if (!(lam >= 0 && lam < b2)) {
    throw std::domain_error("check-confocal: lambda must lie in [0, b^2)");
  }
  const auto base = poncelet::cp2::isotropic_tangents(
      ConicMat::ellipse_from_squares(a2, b2));
  const auto shifted = poncelet::cp2::isotropic_tangents(
      ConicMat::ellipse_from_squares(a2 - lam, b2 - lam));
  bool match = base.size() == shifted.size();
  for (const auto& want : base) {
    long hits = 0;
    for (const auto& got : shifted) {
      if (poncelet::cp2::same_line(got, want)) ++hits;
    }
    match = match && hits == 1;
  }
  for (const auto& tangent : base) {
    std::cout << "base     " << poncelet::cp2::to_string(tangent) << "\n";
  }
  for (const auto& tangent : shifted) {
    std::cout << "confocal " << poncelet::cp2::to_string(tangent) << "\n";
  }
  std::cout << "tangent sets match: " << (match ? "yes" : "no") << "\n";
  if (!match) {
    std::cerr << "verification failed: confocal-tangent-invariance\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Triangular Poncelet orbits in an ellipse: confocal caustic, "
      "triangle-center loci with conic fits, exact complex-projective "
      "checks."};
  app.require_subcommand(1);

  double a = 0.0, b = 0.0, t = 0.0;
  std::size_t n = 720;
  std::vector<std::string> centers{"circumcenter"};
  std::vector<std::string> tol_raw;
  std::string json_path, csv_path, svg_path;
  unsigned int seed = 12345;
  std::string cp2_a, cp2_b, cp2_a2, cp2_b2, cp2_lam = "5";

  CLI::App* caustic_cmd = app.add_subcommand(
      "caustic", "Solve for the confocal caustic of the triangular family");
  caustic_cmd->add_option("--a", a, "semi-major axis")->required();
  caustic_cmd->add_option("--b", b, "semi-minor axis")->required();
  caustic_cmd->add_option("--tol", tol_raw, "named tolerance, name=value");

  CLI::App* orbit_cmd = app.add_subcommand(
      "orbit", "Construct one triangular orbit through P(t)");
  orbit_cmd->add_option("--a", a, "semi-major axis")->required();
  orbit_cmd->add_option("--b", b, "semi-minor axis")->required();
  orbit_cmd->add_option("--t", t, "boundary parameter of the first vertex")
      ->required();
  orbit_cmd->add_option("--tol", tol_raw, "named tolerance, name=value");

  CLI::App* locus_cmd = app.add_subcommand(
      "locus", "Sample a triangle-center locus, fit and classify the conic");
  locus_cmd->add_option("--a", a, "semi-major axis")->required();
  locus_cmd->add_option("--b", b, "semi-minor axis")->required();
  locus_cmd
      ->add_option("--center", centers,
                   "center kind(s): circumcenter, incenter, centroid, "
                   "orthocenter")
      ->delimiter(',')
      ->capture_default_str();
  locus_cmd->add_option("--n", n, "sample count (>= 64)")
      ->check(CLI::Range(std::size_t{64}, std::size_t{10000000}))
      ->capture_default_str();
  locus_cmd->add_option("--json", json_path, "write the JSON report here");
  locus_cmd->add_option("--csv", csv_path, "write t,x,y samples here");
  locus_cmd->add_option("--svg", svg_path, "write a figure here");
  locus_cmd->add_option("--tol", tol_raw, "named tolerance, name=value");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run the full acceptance suite (exit 3 on any failure)");
  verify_cmd->add_option("--seed", seed, "seed for the randomized checks")
      ->capture_default_str();
  verify_cmd->add_option("--json", json_path, "write criterion results here");

  CLI::App* cp2_cmd = app.add_subcommand(
      "cp2", "Exact complex-projective queries over Gaussian rationals");
  cp2_cmd->require_subcommand(1);
  CLI::App* foci_cmd =
      cp2_cmd->add_subcommand("foci", "All four complex foci, exactly");
  CLI::App* tangents_cmd = cp2_cmd->add_subcommand(
      "tangents", "Isotropic tangent lines, with multiplicity");
  CLI::App* confocal_cmd = cp2_cmd->add_subcommand(
      "check-confocal",
      "Verify a confocal ellipse has the identical tangent set");
  for (CLI::App* sub : {foci_cmd, tangents_cmd, confocal_cmd}) {
    sub->add_option("--a", cp2_a, "semi-major axis (rational)");
    sub->add_option("--b", cp2_b, "semi-minor axis (rational)");
    sub->add_option("--a2", cp2_a2, "squared semi-major axis (rational)");
    sub->add_option("--b2", cp2_b2, "squared semi-minor axis (rational)");
  }
  confocal_cmd
      ->add_option("--lam", cp2_lam, "confocal shift (rational, in [0, b^2))")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (caustic_cmd->parsed()) return run_caustic(a, b, tol_raw);
    if (orbit_cmd->parsed()) return run_orbit(a, b, t, tol_raw);
    if (locus_cmd->parsed()) {
      return run_locus(a, b, centers, n, json_path, csv_path, svg_path,
                       tol_raw);
    }
    if (verify_cmd->parsed()) return run_verify(seed, json_path);
    if (cp2_cmd->parsed()) {
      if (confocal_cmd->parsed()) {
        return run_cp2_check_confocal(cp2_a, cp2_b, cp2_a2, cp2_b2, cp2_lam);
      }
      const auto conic = conic_from_flags(cp2_a, cp2_b, cp2_a2, cp2_b2);
      if (foci_cmd->parsed()) return run_cp2_foci(conic);
      if (tangents_cmd->parsed()) return run_cp2_tangents(conic);
    }
    std::cerr << "usage error: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
