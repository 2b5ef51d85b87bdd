#include "metricgeo/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "metricgeo/figure.hpp"
#include "metricgeo/io.hpp"
#include "metricgeo/verify.hpp"

namespace metricgeo::cli {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Inputs {
  MetricField metric(const std::string& path) const {
    return io::to_metric_field(io::read_field_document(path), path);
  }
  TangentField tangent(const std::string& path) const {
    return io::to_tangent_field(io::read_field_document(path), path);
  }
};

io::PathDiagnostics diagnostics_of(const FieldExistence& ex) {
  io::PathDiagnostics d;
  d.sup_t = ex.interval.sup_t;
  d.limiting_point = ex.limiting_id;
  d.t_h = ex.interval.t_h;
  return d;
}

// Samples t0 + k (T - t0)/N for k = 0..N-1, then T, which must lie in the
// existence interval.
std::vector<double> time_grid(double t0, double t_end, int steps, const FieldExistence& ex) {
  if (!(t0 >= 0.0)) throw std::invalid_argument("--t-start must be >= 0");
  if (!(t_end > t0)) throw std::invalid_argument("--t-end must exceed --t-start");
  if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
  if (!ex.interval.contains(t_end)) {
    throw DomainError(Predicate::kExistence,
                      "--t-end " + g17(t_end) + " is not below the existence bound -4/t^h = " +
                          g17(ex.interval.sup_t) + " (t^h = " + g17(ex.interval.t_h) + ")",
                      ex.limiting_id);
  }
  std::vector<double> times;
  for (int k = 0; k < steps; ++k) times.push_back(t0 + k * ((t_end - t0) / steps));
  times.push_back(t_end);
  return times;
}

void report_suite(const verify::SuiteReport& r, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof line, "suite %-10s %s  max_error=%.3e  checks=%zu  time=%.2fs\n",
                r.name.c_str(), r.passed() ? "PASS" : "FAIL", r.max_error(), r.checks.size(),
                r.seconds);
  out << line;
  for (const verify::Check& c : r.checks) {
    if (c.is_error) {
      std::snprintf(line, sizeof line, "  %s %-52s %.3e <= %.1e", c.passed() ? "ok  " : "FAIL",
                    c.name.c_str(), c.value, c.upper);
    } else {
      std::snprintf(line, sizeof line, "  %s %-52s %.4g in [%.4g, %.4g]",
                    c.passed() ? "ok  " : "FAIL", c.name.c_str(), c.value, c.lower, c.upper);
    }
    out << line << "  (" << c.detail << ")\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry of the canonical metric on the space of Riemannian metrics",
               "metricgeo"};
  app.require_subcommand(1);
  std::function<int()> action;
  const Inputs in;

  // geodesic
  {
    auto* cmd = app.add_subcommand("geodesic", "Sample the geodesic from a metric field");
    auto metric = std::make_shared<std::string>();
    auto dir = std::make_shared<std::string>();
    auto outp = std::make_shared<std::string>();
    auto t0 = std::make_shared<double>(0.0);
    auto t1 = std::make_shared<double>();
    auto steps = std::make_shared<int>();
    cmd->add_option("--metric", *metric, "Metric field document")->required();
    cmd->add_option("--dir", *dir, "Initial velocity (tangent field document)")->required();
    cmd->add_option("--t-start", *t0, "First sample time")->capture_default_str();
    cmd->add_option("--t-end", *t1, "Last sample time")->required();
    cmd->add_option("--steps", *steps, "Number of intervals")->required();
    cmd->add_option("--out", *outp, "Output metric path document")->required();
    cmd->callback([&, metric, dir, outp, t0, t1, steps] {
      action = [&, metric, dir, outp, t0, t1, steps] {
        const MetricField g0 = in.metric(*metric);
        const TangentField h = in.tangent(*dir);
        const FieldExistence ex = field_existence_interval(g0, h);
        const std::vector<double> times = time_grid(*t0, *t1, *steps, ex);
        io::write_text(*outp, io::write_metric_path(field_geodesic(g0, h, times),
                                                     diagnostics_of(ex)));
        out << "wrote " << times.size() << " samples to " << *outp << "\n";
        return kExitOk;
      };
    });
  }

  // exp
  {
    auto* cmd = app.add_subcommand("exp", "Exponential map of a tangent field");
    auto metric = std::make_shared<std::string>();
    auto dir = std::make_shared<std::string>();
    auto outp = std::make_shared<std::string>();
    cmd->add_option("--metric", *metric, "Base metric field document")->required();
    cmd->add_option("--dir", *dir, "Tangent field document")->required();
    cmd->add_option("--out", *outp, "Output metric field document")->required();
    cmd->callback([&, metric, dir, outp] {
      action = [&, metric, dir, outp] {
        io::write_text(*outp, io::write_field(field_exp(in.metric(*metric), in.tangent(*dir))));
        out << "wrote " << *outp << "\n";
        return kExitOk;
      };
    });
  }

  // log
  {
    auto* cmd = app.add_subcommand("log", "Logarithm of a metric field at a base metric");
    auto metric = std::make_shared<std::string>();
    auto target = std::make_shared<std::string>();
    auto outp = std::make_shared<std::string>();
    cmd->add_option("--metric", *metric, "Base metric field document")->required();
    cmd->add_option("--target", *target, "Target metric field document")->required();
    cmd->add_option("--out", *outp, "Output tangent field document")->required();
    cmd->callback([&, metric, target, outp] {
      action = [&, metric, target, outp] {
        io::write_text(*outp,
                       io::write_field(field_log(in.metric(*metric), in.metric(*target))));
        out << "wrote " << *outp << "\n";
        return kExitOk;
      };
    });
  }

  // jacobi
  {
    auto* cmd = app.add_subcommand("jacobi", "Jacobi field along a geodesic");
    auto metric = std::make_shared<std::string>();
    auto dir = std::make_shared<std::string>();
    auto kpath = std::make_shared<std::string>();
    auto lpath = std::make_shared<std::string>();
    auto outp = std::make_shared<std::string>();
    auto t1 = std::make_shared<double>();
    auto steps = std::make_shared<int>();
    cmd->add_option("--metric", *metric, "Base metric field document")->required();
    cmd->add_option("--dir", *dir, "Geodesic direction h")->required();
    cmd->add_option("--k", *kpath, "Initial value J(0) = k")->required();
    cmd->add_option("--l", *lpath, "Initial covariant derivative of J")->required();
    cmd->add_option("--t-end", *t1, "Last sample time")->required();
    cmd->add_option("--steps", *steps, "Number of intervals")->required();
    cmd->add_option("--out", *outp, "Output tangent path document")->required();
    cmd->callback([&, metric, dir, kpath, lpath, outp, t1, steps] {
      action = [&, metric, dir, kpath, lpath, outp, t1, steps] {
        const MetricField g0 = in.metric(*metric);
        const TangentField h = in.tangent(*dir);
        const TangentField k = in.tangent(*kpath);
        const TangentField l = in.tangent(*lpath);
        const FieldExistence ex = field_existence_interval(g0, h);
        const std::vector<double> times = time_grid(0.0, *t1, *steps, ex);
        io::write_text(*outp, io::write_tangent_path(g0.base(), times,
                                                      field_jacobi(g0, h, k, l, times),
                                                      diagnostics_of(ex)));
        out << "wrote " << times.size() << " samples to " << *outp << "\n";
        return kExitOk;
      };
    });
  }

  // curvature
  {
    auto* cmd = app.add_subcommand("curvature", "Curvature, Ricci-like and scalar-like values");
    cmd->set_help_flag("--help", "Print this help message and exit");
    auto metric = std::make_shared<std::string>();
    auto hp = std::make_shared<std::string>();
    auto kp = std::make_shared<std::string>();
    auto lp = std::make_shared<std::string>();
    auto outp = std::make_shared<std::string>();
    cmd->add_option("--metric", *metric, "Metric field document")->required();
    cmd->add_option("--h", *hp, "Tangent field h")->required();
    cmd->add_option("--k", *kp, "Tangent field k")->required();
    cmd->add_option("--l", *lp, "Tangent field l")->required();
    cmd->add_option("--out", *outp, "Output JSON report")->required();
    cmd->callback([&, metric, hp, kp, lp, outp] {
      action = [&, metric, hp, kp, lp, outp] {
        const MetricField g = in.metric(*metric);
        const TangentField h = in.tangent(*hp);
        const TangentField k = in.tangent(*kp);
        const TangentField l = in.tangent(*lp);
        require_same_base(g.base(), h.base());
        require_same_base(g.base(), k.base());
        require_same_base(g.base(), l.base());
        using Json = nlohmann::ordered_json;
        Json doc;
        doc["format_version"] = io::kFormatVersion;
        doc["kind"] = "curvature";
        doc["n"] = g.base().dim();
        doc["scalar_like"] = scalar_like(g.base().dim());
        doc["global_ricci_h_l"] = global_ricci(g, h, l);
        Json pts = Json::array();
        const auto& pairs = g.pairs();
        for (std::size_t i = 0; i < g.size(); ++i) {
          const Matrix r = curvature(pairs[i], h[i], k[i], l[i]).matrix();
          Json rows = Json::array();
          for (Eigen::Index a = 0; a < r.rows(); ++a) {
            Json row = Json::array();
            for (Eigen::Index b = 0; b < r.cols(); ++b) row.push_back(r(a, b));
            rows.push_back(std::move(row));
          }
          pts.push_back(Json{{"id", g.base().id(i)},
                             {"weight", g.base().weight(i)},
                             {"R_h_k_l", std::move(rows)},
                             {"ricci_like_h_l", ricci_like(pairs[i], h[i], l[i])}});
        }
        doc["points"] = std::move(pts);
        io::write_text(*outp, doc.dump(2) + "\n");
        out << "wrote " << *outp << "\n";
        return kExitOk;
      };
    });
  }

  // energy
  {
    auto* cmd = app.add_subcommand("energy", "Energy of a sampled metric path");
    auto path = std::make_shared<std::string>();
    cmd->add_option("--path", *path, "Metric path document")->required();
    cmd->callback([&, path] {
      action = [&, path] {
        out << g17(energy(io::read_metric_path(*path))) << "\n";
        return kExitOk;
      };
    });
  }

  // figure1
  {
    auto* cmd = app.add_subcommand("figure1", "Draw the exponential map on the (Id, A) plane");
    auto opts = std::make_shared<figure::Figure1Options>();
    auto outp = std::make_shared<std::string>();
    cmd->add_option("--n", opts->n, "Dimension")->capture_default_str();
    cmd->add_option("--grid", opts->grid, "Number of lines through the origin")
        ->capture_default_str();
    cmd->add_option("--radii", opts->radii, "Comma-separated circle radii")->delimiter(',');
    cmd->add_option("--out", *outp, "Output SVG file")->required();
    cmd->callback([&, opts, outp] {
      action = [&, opts, outp] {
        io::write_text(*outp, figure::figure1_svg(*opts));
        out << "wrote " << *outp << "\n";
        return kExitOk;
      };
    });
  }

  // verify
  {
    auto* cmd = app.add_subcommand("verify", "Run the oracle verification suites");
    auto suite = std::make_shared<std::string>("all");
    auto seed = std::make_shared<std::uint64_t>(42);
    auto tol = std::make_shared<double>(1e-8);
    std::vector<std::string> choices = verify::suite_names();
    choices.insert(choices.begin(), "all");
    cmd->add_option("--suite", *suite, "Suite to run")
        ->check(CLI::IsMember(choices))
        ->capture_default_str();
    cmd->add_option("--seed", *seed, "Random seed")->capture_default_str();
    cmd->add_option("--tol", *tol, "Tolerance cap for closed-form identity checks")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->callback([&, suite, seed, tol] {
      action = [&, suite, seed, tol] {
        const auto start = std::chrono::steady_clock::now();
        bool ok = true;
        for (const std::string& name : verify::suite_names()) {
          if (*suite != "all" && *suite != name) continue;
          const verify::SuiteReport r = verify::run_suite(name, *seed, *tol);
          report_suite(r, out);
          ok = ok && r.passed();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char line[128];
        std::snprintf(line, sizeof line, "verify: %s (%.2fs)\n",
                      ok ? "all checks passed" : "FAILED", secs);
        out << line;
        return ok ? kExitOk : kExitVerify;
      };
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!action) return kExitUsage;

  try {
    return action();
  } catch (const DomainError& e) {
    err << "error: domain violation [" << predicate_name(e.predicate()) << "]";
    if (!e.point_id().empty()) err << " at point '" << e.point_id() << "'";
    err << ": " << e.detail() << "\n";
    return kExitDomain;
  } catch (const io::DocumentError& e) {
    err << "error: malformed document: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BaseMismatchError& e) {
    err << "error: incompatible bases: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace metricgeo::cli
