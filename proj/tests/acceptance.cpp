// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "metricgeo/cli.hpp"
#include "metricgeo/figure.hpp"
#include "metricgeo/verify.hpp"

namespace {

using metricgeo::verify::Check;
namespace verify = metricgeo::verify;

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool passed = true;
  std::string summary;
};

Outcome combine(const std::vector<Check>& checks) {
  Outcome o;
  std::ostringstream os;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Check& c = checks[i];
    o.passed = o.passed && c.passed();
    char buf[160];
    if (c.is_error) {
      std::snprintf(buf, sizeof buf, "%s%s %.2e<=%.3g", i ? "; " : "", c.name.c_str(), c.value, c.upper);
    } else {
      std::snprintf(buf, sizeof buf, "%s%s %.4g in [%.4g,%.4g]", i ? "; " : "", c.name.c_str(), c.value,
                    c.lower, c.upper);
    }
    os << buf;
    if (!c.passed()) os << " [" << c.detail << "]";
  }
  o.summary = os.str();
  return o;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Check> checks;
  for (int n : {2, 3, 4}) checks.push_back(verify::geodesic_vs_rk4(kSeed, n, 200, 1e-3, 1e-6));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Check timing{"runtime [s]", secs, 0.0, 10.0, false, "", secs};
  checks.push_back(timing);
  return combine(checks);
}

Outcome criterion2() {
  std::vector<Check> checks;
  for (int n : {2, 3, 4}) checks.push_back(verify::exp_log_roundtrip(kSeed, n, 500, 1e-9));
  return combine(checks);
}

Outcome criterion3() { return combine({verify::blowup_window(kSeed, 50, 1e-3)}); }

Outcome criterion4() {
  std::vector<Check> checks;
  for (int n : {2, 3, 4}) {
    checks.push_back(verify::curvature_routes(kSeed, n, 1000, 1e-9));
    checks.push_back(verify::curvature_symmetries(kSeed, n, 1000, 1e-9));
  }
  return combine(checks);
}

Outcome criterion5() {
  std::vector<Check> checks{verify::bracket_trace(kSeed, 500, 1e-10)};
  for (int n : {2, 3, 4}) checks.push_back(verify::ricci_trace(kSeed, n, 200, 1e-9));
  checks.push_back(verify::scalar_curvature(1e-12));
  return combine(checks);
}

Outcome criterion6() {
  std::vector<Check> checks;
  for (int n : {2, 3}) {
    checks.push_back(verify::jacobi_vs_rk4(kSeed, n, 100, 1e-5));
    checks.push_back(verify::jacobi_vs_variation(kSeed, n, 100, 1e-6));
    checks.push_back(verify::jacobi_initial_value(kSeed, n, 100));
    checks.push_back(verify::jacobi_initial_derivative_order(kSeed, n, 100));
  }
  return combine(checks);
}

Outcome criterion7() {
  return combine({verify::first_variation_random(kSeed, 50, 1e-6),
                  verify::first_variation_geodesic(kSeed, 10, 1e-6)});
}

Outcome criterion8(const std::filesystem::path& golden) {
  const std::filesystem::path out =
      std::filesystem::temp_directory_path() / "metricgeo_acceptance_figure1_n2.svg";
  std::ostringstream cout_sink, cerr_sink;
  const int code = metricgeo::cli::run({"figure1", "--n", "2", "--out", out.string()}, cout_sink, cerr_sink);
  Outcome o;
  if (code != 0) {
    o.passed = false;
    o.summary = "figure1 exited " + std::to_string(code) + ": " + cerr_sink.str();
    return o;
  }
  const std::string svg = read_file(out);
  std::filesystem::remove(out);

  const auto vp = metricgeo::figure::Viewport::for_dimension(2);
  const std::regex polyline("<polyline class=\"geodesic\"[^>]*points=\"([^\"]*)\"");
  const std::regex pair("(-?[0-9.]+),(-?[0-9.]+)");
  double max_u = 0.0;
  long points = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), polyline); it != std::sregex_iterator(); ++it) {
    const std::string pts = (*it)[1];
    for (auto p = std::sregex_iterator(pts.begin(), pts.end(), pair); p != std::sregex_iterator(); ++p) {
      max_u = std::max(max_u, std::abs(vp.u_of(std::stod((*p)[1]))));
      ++points;
    }
  }
  const double bound = 2.0 * std::numbers::pi;
  Check strip{"geodesic polylines max|u| (" + std::to_string(points) + " points)",
              max_u, 0.0, bound, true, "", 0.0};
  strip.value = max_u;
  std::vector<Check> checks{strip, verify::figure1_plane(2, 40, 1e-10)};
  const std::string expected = read_file(golden);
  const bool same = !expected.empty() && expected == svg;
  checks.push_back(Check{"golden byte match", same ? 1.0 : 0.0, 1.0, 1.0, false,
                         same ? "" : "differs from " + golden.string(), 0.0});
  Outcome res = combine(checks);
  // |u| < 2 pi is strict
  if (!(max_u < bound) || points == 0) res.passed = false;
  return res;
}

Outcome criterion9() {
  std::ostringstream out, err;
  const auto start = std::chrono::steady_clock::now();
  const int code =
      metricgeo::cli::run({"verify", "--suite", "all", "--seed", "42", "--tol", "1e-8"}, out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  int suites = 0;
  const std::string text = out.str();
  std::istringstream lines(text);
  std::ostringstream summary;
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("suite ", 0) == 0 && line.find("max_error=") != std::string::npos) {
      ++suites;
      std::istringstream ws(line);
      std::string word, name, status, max_error;
      ws >> word >> name >> status >> max_error;
      summary << name << " " << max_error << "; ";
    }
  }
  o.passed = code == 0 && suites == 5 && secs < 60.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "exit %d, %d suites, %.1fs < 60s", code, suites, secs);
  o.summary = summary.str() + buf;
  if (code != 0) o.summary += "\n" + text + err.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path golden =
      argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::path("tests/golden/figure1_n2.svg");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form geodesic vs RK4", criterion1},
      {"Exp/Log mutual inversion", criterion2},
      {"blow-up time window", criterion3},
      {"curvature route equivalence and symmetries", criterion4},
      {"bracket trace, Ricci-like and scalar-like traces", criterion5},
      {"Jacobi field triple agreement", criterion6},
      {"first variation formula", criterion7},
      {"exponential map figure", [&] { return criterion8(golden); }},
      {"verify --suite all --seed 42 --tol 1e-8", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.summary = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.passed) ++failed;
    std::printf("criterion %zu: %s  %s (%.1fs)\n    %s\n", i + 1, o.passed ? "PASS" : "FAIL",
                criteria[i].first.c_str(), secs, o.summary.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
