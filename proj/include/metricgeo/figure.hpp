#pragma once

// The exponential map on the plane spanned by Id and a traceless A, drawn as
// an SVG: images of lines through the origin (geodesics) and of circles
// around the origin (distance level sets) under figure1_map.

#include <string>
#include <vector>

#include "metricgeo/geoexp.hpp"

namespace metricgeo::figure {

struct Figure1Options {
  int n = 2;
  /// Number of lines through the origin, at angles k pi / grid.
  int grid = 12;
  std::vector<double> radii = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  /// Samples per ray and per circle.
  int samples = 240;
};

struct Curve {
  enum class Kind { kGeodesic, kSphere };
  Kind kind = Kind::kGeodesic;
  /// Direction angle of the ray, or radius of the circle.
  double parameter = 0.0;
  /// Plane coordinates (x, y) and their images (u, v), point by point.
  std::vector<PlaneCoords> source;
  std::vector<PlaneCoords> image;
};

/// Fixed mapping of (u, v) to pixels.
struct Viewport {
  double width = 800.0;
  double height = 600.0;
  double margin = 40.0;
  double u_min = 0.0, u_max = 0.0, v_min = 0.0, v_max = 0.0;

  static Viewport for_dimension(int n);
  bool contains(const PlaneCoords& uv) const;
  double px(double u) const;
  double py(double v) const;
  double u_of(double px) const;
  double v_of(double py) const;
};

/// Image curves, split where they meet the excluded ray or leave the
/// viewport. Validates the options (n >= 1, grid >= 1, radii > 0,
/// samples >= 2) and throws std::invalid_argument otherwise.
std::vector<Curve> figure1_curves(const Figure1Options& options);

/// The SVG document. Output depends only on the options.
std::string figure1_svg(const Figure1Options& options);

}  // namespace metricgeo::figure
