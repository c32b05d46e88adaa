#include "skyway/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skyway/errors.hpp"

namespace skyway {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double distance_km(const Vec2& a, const Vec2& b) {
  const double dx = b.x_km - a.x_km;
  const double dy = b.y_km - a.y_km;
  return std::sqrt(dx * dx + dy * dy);
}

double bearing(const Vec2& from, const Vec2& to) {
  if (from == to) {
    throw ValidationError("bearing undefined for coincident points");
  }
  double theta = std::atan2(to.y_km - from.y_km, to.x_km - from.x_km);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta = 0.0;  // atan2 rounding at the wrap
  return theta;
}

bool Sector::is_full_disc() const { return width() >= kTwoPi; }

bool Sector::contains_angle(double theta) const {
  if (is_full_disc()) return true;
  // Shift theta into [angle_lo, angle_lo + 2pi) before the interval test.
  double t = std::fmod(theta - angle_lo, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t <= width();
}

bool Sector::contains(const Vec2& p) const {
  const double d = distance_km(origin, p);
  if (d > radius_km) return false;
  if (d == 0.0) return true;
  return contains_angle(bearing(origin, p));
}

Sector sector_cover(const Vec2& origin, const std::vector<Vec2>& destinations,
                    const Margins& margins) {
  if (destinations.empty()) {
    throw ValidationError("sector_cover requires at least one destination");
  }

  double radius = 0.0;
  std::vector<double> bearings;
  bearings.reserve(destinations.size());
  for (const Vec2& dst : destinations) {
    if (dst == origin) {
      throw ValidationError("sector_cover destination coincides with origin");
    }
    radius = std::max(radius, distance_km(origin, dst));
    bearings.push_back(bearing(origin, dst));
  }
  radius *= 1.0 + margins.radius_margin;

  Sector sector;
  sector.origin = origin;
  sector.radius_km = radius;

  // Minimal enclosing arc: the complement of the largest circular gap
  // between consecutive bearings.
  std::sort(bearings.begin(), bearings.end());
  double largest_gap = kTwoPi - bearings.back() + bearings.front();
  std::size_t gap_after = bearings.size() - 1;  // arc starts after this gap
  for (std::size_t i = 0; i + 1 < bearings.size(); ++i) {
    const double gap = bearings[i + 1] - bearings[i];
    if (gap > largest_gap) {
      largest_gap = gap;
      gap_after = i;
    }
  }
  const double arc = kTwoPi - largest_gap;

  if (arc > kTwoPi - 2.0 * margins.angle_margin_rad) {
    sector.angle_lo = 0.0;
    sector.angle_hi = kTwoPi;
    return sector;
  }

  const double lo = bearings[(gap_after + 1) % bearings.size()];
  sector.angle_lo = lo - margins.angle_margin_rad;
  sector.angle_hi = lo + arc + margins.angle_margin_rad;
  return sector;
}

}  // namespace skyway
