#pragma once

#include <chrono>
#include <cmath>
#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsap::temporal {

/// Absolute time as real-valued minutes since 2025-12-24 00:00 UTC.
struct Instant {
  double minutes = 0.0;

  constexpr Instant() = default;
  constexpr explicit Instant(double m) : minutes(m) {}

  constexpr Instant operator+(double dm) const { return Instant(minutes + dm); }
  constexpr Instant operator-(double dm) const { return Instant(minutes - dm); }
  constexpr double operator-(Instant other) const { return minutes - other.minutes; }

  friend constexpr auto operator<=>(const Instant&, const Instant&) = default;
};

/// Wall-clock time of day.
struct ClockTime {
  int hour = 0;
  int minute = 0;

  constexpr int minutes_of_day() const { return hour * 60 + minute; }

  static ClockTime parse(std::string_view hhmm) {
    int h = -1;
    int m = -1;
    char tail = 0;
    const std::string s(hhmm);
    if (std::sscanf(s.c_str(), "%d:%d%c", &h, &m, &tail) != 2 || h < 0 || h > 23 || m < 0 ||
        m > 59 || s.size() != 5) {
      throw std::invalid_argument("invalid HH:MM clock time: '" + s + "'");
    }
    return ClockTime{h, m};
  }
};

/// Buffered darkness interval in absolute UTC. Boundaries count as dark.
struct DarknessWindow {
  Instant dusk_utc;
  Instant dawn_utc;

  double length_minutes() const { return dawn_utc - dusk_utc; }
};

/// Converts a local dusk (on local 2025-12-24) and the following local dawn to a
/// UTC window, trimming `buffer_min` off both ends.
inline DarknessWindow window_from_local(ClockTime dusk_local, ClockTime dawn_local,
                                        double utc_offset_hours, double buffer_min) {
  if (!(utc_offset_hours >= -12.0 && utc_offset_hours <= 14.0)) {
    throw std::invalid_argument("utc offset outside [-12, +14]: " +
                                std::to_string(utc_offset_hours));
  }
  if (!(buffer_min >= 0.0)) {
    throw std::invalid_argument("negative darkness buffer");
  }
  const double dusk_local_min = dusk_local.minutes_of_day();
  double dawn_local_min = dawn_local.minutes_of_day();
  if (dawn_local_min <= dusk_local_min) dawn_local_min += 24.0 * 60.0;

  const double offset_min = utc_offset_hours * 60.0;
  DarknessWindow w{Instant(dusk_local_min - offset_min + buffer_min),
                   Instant(dawn_local_min - offset_min - buffer_min)};
  if (w.dusk_utc >= w.dawn_utc) {
    throw std::invalid_argument("darkness window is empty after buffering");
  }
  return w;
}

inline bool is_dark(const DarknessWindow& w, Instant t) noexcept {
  return w.dusk_utc <= t && t <= w.dawn_utc;
}

namespace detail {
inline constexpr std::chrono::sys_days kEpochDay =
    std::chrono::sys_days{std::chrono::year{2025} / std::chrono::December / 24};
}

/// ISO-8601 UTC with second resolution, e.g. 2025-12-24T18:15:00Z.
inline std::string format_iso(Instant t) {
  using namespace std::chrono;
  const auto total_s = static_cast<long long>(std::llround(t.minutes * 60.0));
  const sys_seconds tp = detail::kEpochDay + seconds(total_s);
  const auto day = floor<days>(tp);
  const year_month_day ymd{day};
  const hh_mm_ss hms{tp - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

/// Parses YYYY-MM-DDTHH:MM[:SS][Z].
inline Instant parse_iso(std::string_view text) {
  using namespace std::chrono;
  const std::string s(text);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  int consumed = 0;
  int n = std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &sec,
                      &consumed);
  if (n < 6) {
    sec = 0;
    consumed = 0;
    n = std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d%n", &y, &mo, &d, &h, &mi, &consumed);
    if (n < 5) throw std::invalid_argument("invalid ISO-8601 timestamp: '" + s + "'");
  }
  const std::string_view rest = std::string_view(s).substr(static_cast<std::size_t>(consumed));
  if (!(rest.empty() || rest == "Z")) {
    throw std::invalid_argument("only UTC ISO-8601 timestamps are accepted: '" + s + "'");
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59 || h < 0 || mi < 0 || sec < 0) {
    throw std::invalid_argument("invalid ISO-8601 timestamp: '" + s + "'");
  }
  const auto day_offset = (sys_days{ymd} - detail::kEpochDay).count();
  return Instant(static_cast<double>(day_offset) * 1440.0 + h * 60.0 + mi + sec / 60.0);
}

}  // namespace tsap::temporal
