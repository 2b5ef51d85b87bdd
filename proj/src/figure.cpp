#include "metricgeo/figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace metricgeo::figure {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  // avoid "-0.000"
  if (std::string(buf) == "-0.000") return "0.000";
  return buf;
}

// cos/sin with exact zeros on the axes, so that the downward vertical ray
// lies exactly on x = 0.
PlaneCoords direction(double angle) {
  double c = std::cos(angle);
  double s = std::sin(angle);
  if (std::abs(c) < 1e-12) c = 0.0;
  if (std::abs(s) < 1e-12) s = 0.0;
  return {c, s};
}

bool on_excluded_ray(double x, double y, int n) { return x == 0.0 && y <= -4.0 / n; }

// Maps the samples, breaking the curve at excluded or off-viewport points.
void emit(std::vector<Curve>& out, Curve::Kind kind, double parameter,
          const std::vector<PlaneCoords>& xy, int n, const Viewport& vp) {
  Curve current{kind, parameter, {}, {}};
  const auto flush = [&]() {
    if (current.image.size() >= 2) out.push_back(current);
    current.source.clear();
    current.image.clear();
  };
  for (const PlaneCoords& p : xy) {
    if (on_excluded_ray(p.u, p.v, n)) {
      flush();
      continue;
    }
    const PlaneCoords uv = figure1_map(p.u, p.v, n);
    if (!vp.contains(uv)) {
      flush();
      continue;
    }
    current.source.push_back(p);
    current.image.push_back(uv);
  }
  flush();
}

}  // namespace

Viewport Viewport::for_dimension(int n) {
  Viewport vp;
  const double bound = 4.0 * kPi / n;
  vp.u_min = -1.15 * bound;
  vp.u_max = 1.15 * bound;
  vp.v_min = -12.0 / n;
  vp.v_max = 6.0 / n;
  return vp;
}

bool Viewport::contains(const PlaneCoords& uv) const {
  return uv.u >= u_min && uv.u <= u_max && uv.v >= v_min && uv.v <= v_max;
}

double Viewport::px(double u) const {
  return margin + (u - u_min) / (u_max - u_min) * (width - 2.0 * margin);
}

double Viewport::py(double v) const {
  return height - margin - (v - v_min) / (v_max - v_min) * (height - 2.0 * margin);
}

double Viewport::u_of(double x) const {
  return u_min + (x - margin) / (width - 2.0 * margin) * (u_max - u_min);
}

double Viewport::v_of(double y) const {
  return v_min + (height - margin - y) / (height - 2.0 * margin) * (v_max - v_min);
}

std::vector<Curve> figure1_curves(const Figure1Options& options) {
  const int n = options.n;
  if (n < 1) throw std::invalid_argument("figure1: n must be >= 1");
  if (options.grid < 1) throw std::invalid_argument("figure1: grid must be >= 1");
  if (options.samples < 2) throw std::invalid_argument("figure1: samples must be >= 2");
  for (double r : options.radii) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("figure1: radii must be finite and > 0");
    }
  }
  const Viewport vp = Viewport::for_dimension(n);
  const double extent =
      options.radii.empty() ? 3.0 : *std::max_element(options.radii.begin(), options.radii.end());
  const int m = options.samples;

  std::vector<Curve> out;
  // each line through the origin as two rays starting at the origin
  for (int k = 0; k < 2 * options.grid; ++k) {
    const double angle = k * kPi / options.grid;
    const PlaneCoords d = direction(angle);
    std::vector<PlaneCoords> xy;
    for (int j = 0; j <= m; ++j) {
      const double rho = extent * j / m;
      xy.push_back({rho * d.u, rho * d.v});
    }
    emit(out, Curve::Kind::kGeodesic, angle, xy, n, vp);
  }

  for (double r : options.radii) {
    std::vector<PlaneCoords> xy;
    if (r < 4.0 / n) {
      for (int j = 0; j <= m; ++j) {
        const PlaneCoords d = direction(2.0 * kPi * j / m - 0.5 * kPi);
        xy.push_back({r * d.u, r * d.v});
      }
    } else {
      // open arc that starts and ends beside the excluded ray
      for (int j = 0; j < m; ++j) {
        const PlaneCoords d = direction(2.0 * kPi * (j + 0.5) / m - 0.5 * kPi);
        xy.push_back({r * d.u, r * d.v});
      }
    }
    emit(out, Curve::Kind::kSphere, r, xy, n, vp);
  }
  return out;
}

std::string figure1_svg(const Figure1Options& options) {
  const std::vector<Curve> curves = figure1_curves(options);
  const Viewport vp = Viewport::for_dimension(options.n);
  const double bound = 4.0 * kPi / options.n;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << vp.width
     << "\" height=\"" << vp.height << "\" viewBox=\"0 0 " << vp.width << " " << vp.height
     << "\">\n"
     << "<title>Exponential map on the (Id, A) plane, n = " << options.n << "</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << vp.width << "\" height=\"" << vp.height
     << "\" fill=\"white\"/>\n";

  os << "<g id=\"axes\" stroke=\"#888888\" stroke-width=\"1\">\n"
     << "<line x1=\"" << fmt(vp.px(vp.u_min)) << "\" y1=\"" << fmt(vp.py(0.0)) << "\" x2=\""
     << fmt(vp.px(vp.u_max)) << "\" y2=\"" << fmt(vp.py(0.0)) << "\"/>\n"
     << "<line x1=\"" << fmt(vp.px(0.0)) << "\" y1=\"" << fmt(vp.py(vp.v_min)) << "\" x2=\""
     << fmt(vp.px(0.0)) << "\" y2=\"" << fmt(vp.py(vp.v_max)) << "\"/>\n"
     << "</g>\n"
     << "<g font-family=\"sans-serif\" font-size=\"14\" fill=\"#444444\">\n"
     << "<text x=\"" << fmt(vp.px(vp.u_max) - 12.0) << "\" y=\"" << fmt(vp.py(0.0) - 6.0)
     << "\">u</text>\n"
     << "<text x=\"" << fmt(vp.px(0.0) + 6.0) << "\" y=\"" << fmt(vp.py(vp.v_max) + 14.0)
     << "\">v</text>\n"
     << "</g>\n";

  // the two sides of the excluded ray map to u = -4 pi/n and u = 4 pi/n
  os << "<g id=\"excluded-ray\" stroke=\"#cc0000\" stroke-width=\"1.5\" "
        "stroke-dasharray=\"6,4\">\n";
  for (double u : {-bound, bound}) {
    os << "<line x1=\"" << fmt(vp.px(u)) << "\" y1=\"" << fmt(vp.py(vp.v_min)) << "\" x2=\""
       << fmt(vp.px(u)) << "\" y2=\"" << fmt(vp.py(vp.v_max)) << "\"/>\n";
  }
  os << "</g>\n"
     << "<text x=\"" << fmt(vp.px(bound) - 150.0) << "\" y=\"" << fmt(vp.py(vp.v_max) + 14.0)
     << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#cc0000\">u = 4&#960;/"
     << options.n << " (excluded ray)</text>\n";

  const auto polylines = [&](Curve::Kind kind, const char* id, const char* cls,
                             const char* colour, const char* attr) {
    os << "<g id=\"" << id << "\" fill=\"none\" stroke=\"" << colour
       << "\" stroke-width=\"1.2\">\n";
    for (const Curve& c : curves) {
      if (c.kind != kind) continue;
      os << "<polyline class=\"" << cls << "\" " << attr << "=\"" << fmt(c.parameter)
         << "\" points=\"";
      for (std::size_t i = 0; i < c.image.size(); ++i) {
        os << (i ? " " : "") << fmt(vp.px(c.image[i].u)) << "," << fmt(vp.py(c.image[i].v));
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  };
  polylines(Curve::Kind::kGeodesic, "geodesics", "geodesic", "#1f5fbf", "data-angle");
  polylines(Curve::Kind::kSphere, "spheres", "sphere", "#2a9d3a", "data-radius");
  os << "</svg>\n";
  return os.str();
}

}  // namespace metricgeo::figure
