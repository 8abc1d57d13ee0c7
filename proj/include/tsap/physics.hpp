#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>

#include "tsap/temporal.hpp"

namespace tsap::physics {

inline constexpr double kAirDensity = 1.225;  // kg/m^3, sea level

inline constexpr double kmh_to_mps(double kmh) noexcept { return kmh / 3.6; }
inline constexpr double mps_to_kmh(double mps) noexcept { return mps * 3.6; }

/// Flight time in minutes for `distance_m` at `speed_mps`. Every arrival time in
/// the library goes through this function so that boundary checks agree bit-for-bit.
inline double flight_minutes(double distance_m, double speed_mps) noexcept {
  return distance_m / speed_mps / 60.0;
}

struct SpeedBounds {
  double v_min_mps = kmh_to_mps(10.0);
  double v_max_mps = kmh_to_mps(15'000.0);

  void validate() const {
    if (!(v_min_mps > 0.0 && v_min_mps < v_max_mps)) {
      throw std::invalid_argument("speed bounds must satisfy 0 < v_min < v_max");
    }
  }
};

struct PayloadState {
  std::uint64_t delivered_population = 0;
  std::uint64_t total_population = 1;
};

/// Frontal area in m^2: 1.0 with a full sack, 0.01 once everything is delivered.
inline double cross_section(const PayloadState& p) {
  if (p.total_population == 0 || p.delivered_population > p.total_population) {
    throw std::invalid_argument("invalid payload state");
  }
  const double remaining = 1.0 - static_cast<double>(p.delivered_population) /
                                     static_cast<double>(p.total_population);
  return 0.01 + 0.99 * remaining;
}

/// 1/2 * rho * A * v^2 * d, in joules.
inline double aero_work(double distance_m, double speed_mps, double area_m2) noexcept {
  return 0.5 * kAirDensity * area_m2 * speed_mps * speed_mps * distance_m;
}

namespace detail {

// Moves v one ulp at a time until the arrival lands on the inclusive side of
// the window boundary it was aimed at. Bounded: a few ulps always suffice.
inline double settle_on_boundary(double d, temporal::Instant t_dep, double v,
                                 const temporal::DarknessWindow& w, bool aiming_dusk) {
  for (int i = 0; i < 8; ++i) {
    const temporal::Instant arrival = t_dep + flight_minutes(d, v);
    if (aiming_dusk && arrival < w.dusk_utc) {
      v = std::nextafter(v, 0.0);
    } else if (!aiming_dusk && arrival > w.dawn_utc) {
      v = std::nextafter(v, std::numeric_limits<double>::infinity());
    } else {
      break;
    }
  }
  return v;
}

}  // namespace detail

/// Cruise speed for a leg of length `d` departing at `t_dep` towards a city with
/// darkness window `w` (no window: the depot). Returns nullopt when no speed in
/// `bounds` lands the sleigh inside the window.
inline std::optional<double> select_speed(double d, temporal::Instant t_dep,
                                          const std::optional<temporal::DarknessWindow>& w,
                                          double v_default, const SpeedBounds& bounds) {
  if (!w) return v_default;

  const temporal::Instant default_arrival = t_dep + flight_minutes(d, v_default);
  if (temporal::is_dark(*w, default_arrival)) return v_default;

  double v = 0.0;
  bool aiming_dusk = false;
  if (default_arrival < w->dusk_utc) {
    // early: slow down so we touch down exactly at dusk
    aiming_dusk = true;
    v = d / ((w->dusk_utc - t_dep) * 60.0);
  } else {
    // late: hurry to make dawn, if dawn is still ahead
    if (w->dawn_utc <= t_dep) return std::nullopt;
    v = d / ((w->dawn_utc - t_dep) * 60.0);
    if (v > bounds.v_max_mps) return std::nullopt;
  }
  if (v < bounds.v_min_mps) v = bounds.v_min_mps;
  if (v > bounds.v_max_mps) v = bounds.v_max_mps;
  if (!(v > 0.0)) return std::nullopt;

  v = detail::settle_on_boundary(d, t_dep, v, *w, aiming_dusk);
  if (v < bounds.v_min_mps || v > bounds.v_max_mps) return std::nullopt;
  if (!temporal::is_dark(*w, t_dep + flight_minutes(d, v))) return std::nullopt;
  return v;
}

}  // namespace tsap::physics
