#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tsap::geo {

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Latitude/longitude in degrees. Longitude is normalised into [-180, 180].
class GeoPoint {
 public:
  GeoPoint() = default;

  GeoPoint(double lat_deg, double lon_deg) : lat_(lat_deg), lon_(lon_deg) {
    if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg)) {
      throw std::invalid_argument("GeoPoint: non-finite coordinate");
    }
    if (lat_deg < -90.0 || lat_deg > 90.0) {
      throw std::invalid_argument("GeoPoint: latitude out of range: " + std::to_string(lat_deg));
    }
    if (lon_deg < -180.0 || lon_deg > 180.0) {
      throw std::invalid_argument("GeoPoint: longitude out of range: " + std::to_string(lon_deg));
    }
  }

  /// Accepts any finite longitude and wraps it into [-180, 180].
  static GeoPoint normalized(double lat_deg, double lon_deg) {
    double lon = std::fmod(lon_deg + 180.0, 360.0);
    if (lon < 0.0) lon += 360.0;
    return GeoPoint(lat_deg, lon - 180.0);
  }

  double lat() const noexcept { return lat_; }
  double lon() const noexcept { return lon_; }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

 private:
  double lat_ = 0.0;
  double lon_ = 0.0;
};

inline constexpr double to_radians(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
inline constexpr double to_degrees(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

/// Haversine distance in meters on a sphere of radius kEarthRadiusM.
inline double great_circle_distance(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double phi1 = to_radians(a.lat());
  const double phi2 = to_radians(b.lat());
  const double dphi = phi2 - phi1;
  const double dlambda = to_radians(b.lon() - a.lon());

  const double s_phi = std::sin(dphi / 2.0);
  const double s_lambda = std::sin(dlambda / 2.0);
  double h = s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lambda * s_lambda;
  // rounding can push h marginally outside [0, 1] near antipodes
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

/// Point at fraction `f` in [0, 1] along the great circle from a to b.
inline GeoPoint interpolate(const GeoPoint& a, const GeoPoint& b, double f) {
  const double phi1 = to_radians(a.lat());
  const double phi2 = to_radians(b.lat());
  const double l1 = to_radians(a.lon());
  const double l2 = to_radians(b.lon());
  const double delta = great_circle_distance(a, b) / kEarthRadiusM;
  if (delta < 1e-12) return a;

  const double sd = std::sin(delta);
  const double wa = std::sin((1.0 - f) * delta) / sd;
  const double wb = std::sin(f * delta) / sd;
  const double x = wa * std::cos(phi1) * std::cos(l1) + wb * std::cos(phi2) * std::cos(l2);
  const double y = wa * std::cos(phi1) * std::sin(l1) + wb * std::cos(phi2) * std::sin(l2);
  const double z = wa * std::sin(phi1) + wb * std::sin(phi2);

  const double lat = to_degrees(std::atan2(z, std::hypot(x, y)));
  const double lon = to_degrees(std::atan2(y, x));
  return GeoPoint(std::clamp(lat, -90.0, 90.0), std::clamp(lon, -180.0, 180.0));
}

}  // namespace tsap::geo
