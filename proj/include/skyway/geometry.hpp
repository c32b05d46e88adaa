#pragma once

#include <vector>

namespace skyway {

/// Planar position in km. Paper-scale distances make flat geometry exact enough.
struct Vec2 {
  double x_km = 0.0;
  double y_km = 0.0;

  friend bool operator==(const Vec2& a, const Vec2& b) {
    return a.x_km == b.x_km && a.y_km == b.y_km;
  }
};

/// Axis-aligned rectangle anchored at the origin.
struct Rect {
  double width_km = 0.0;
  double height_km = 0.0;

  bool contains(const Vec2& p) const {
    return p.x_km >= 0.0 && p.x_km <= width_km && p.y_km >= 0.0 && p.y_km <= height_km;
  }
};

double distance_km(const Vec2& a, const Vec2& b);

/// Bearing of `to` as seen from `from`, counter-clockwise from +x, in [0, 2pi).
/// Coincident points are rejected.
double bearing(const Vec2& from, const Vec2& to);

/// Circular sector around an origin. The angular interval is [angle_lo, angle_hi]
/// with angle_hi >= angle_lo; the interval may pass through 2pi (angle_hi up to
/// angle_lo + 2pi). A full disc is width == 2pi.
struct Sector {
  Vec2 origin;
  double angle_lo = 0.0;
  double angle_hi = 0.0;
  double radius_km = 0.0;

  double width() const { return angle_hi - angle_lo; }
  bool is_full_disc() const;
  bool contains_angle(double theta) const;
  bool contains(const Vec2& p) const;
};

/// Search-space margins applied when building the sector.
struct Margins {
  double angle_margin_rad = 0.2617993877991494;  // 15 degrees
  double radius_margin = 0.1;
};

/// Smallest sector centered at `origin` whose angular interval covers the
/// bearing of every destination (minimal enclosing arc, wrap-aware), widened
/// by angle_margin per side; radius is the farthest destination distance
/// scaled by (1 + radius_margin). Degenerates to a full disc when the minimal
/// arc exceeds 2pi - 2*angle_margin.
Sector sector_cover(const Vec2& origin, const std::vector<Vec2>& destinations,
                    const Margins& margins);

}  // namespace skyway
