#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsap/city.hpp"
#include "tsap/colony.hpp"
#include "tsap/evaluator.hpp"
#include "tsap/geo.hpp"
#include "tsap/physics.hpp"
#include "tsap/temporal.hpp"

namespace tsap::dataio {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCityHeader =
    "name,lat_deg,lon_deg,population,utc_offset_hours,dusk_local_hhmm,dawn_local_hhmm";
inline constexpr std::string_view kConvergenceHeader =
    "iteration,best_objective_J,best_distance_m,daylight_count,epsilon,v_default_mps";
inline constexpr std::string_view kGanttHeader =
    "stop_index,city,window_start_utc,window_end_utc,arrival_utc";

/// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw DataError("unterminated quoted field");
  return fields;
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace detail {

template <typename T>
T parse_number(std::string_view field, const char* what) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw DataError(std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string format_sci(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", decimals, v);
  return buf;
}

}  // namespace detail

/// Reads the city CSV, buffers every darkness window, keeps the `limit` most
/// populous rows (0 keeps all, stable on ties) and prepends the North Pole depot.
inline CityTable parse_cities(std::istream& in, double buffer_min, std::size_t limit,
                              const std::string& source = "<input>") {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": empty dataset");
  if (detail::strip_cr(line) != kCityHeader) {
    throw DataError(source + ":1: unexpected header, expected '" + std::string(kCityHeader) + "'");
  }

  std::vector<City> rows;
  std::set<std::string> names;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = detail::strip_cr(line);
    if (text.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    try {
      const auto f = split_csv_line(text);
      if (f.size() != 7) {
        throw DataError("expected 7 fields, found " + std::to_string(f.size()));
      }
      City c;
      c.name = f[0];
      if (c.name.empty()) throw DataError("empty city name");
      const double lat = detail::parse_number<double>(f[1], "latitude");
      const double lon = detail::parse_number<double>(f[2], "longitude");
      try {
        c.point = geo::GeoPoint(lat, lon);
      } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
      }
      c.population = detail::parse_number<std::uint64_t>(f[3], "population");
      if (c.population == 0) throw DataError("population must be > 0");
      c.utc_offset_hours = detail::parse_number<double>(f[4], "utc offset");
      temporal::ClockTime dusk, dawn;
      try {
        dusk = temporal::ClockTime::parse(f[5]);
        dawn = temporal::ClockTime::parse(f[6]);
        c.window = temporal::window_from_local(dusk, dawn, c.utc_offset_hours, buffer_min);
      } catch (const std::invalid_argument& e) {
        throw DataError(std::string(e.what()) + " for city '" + c.name + "'");
      }
      if (!names.insert(c.name).second) throw DataError("duplicate city name '" + c.name + "'");
      rows.push_back(std::move(c));
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  if (rows.empty()) throw DataError(source + ": dataset has no cities");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const City& a, const City& b) { return a.population > b.population; });
  if (limit != 0) {
    if (limit > rows.size()) {
      throw DataError(source + ": requested " + std::to_string(limit) + " cities but dataset has " +
                      std::to_string(rows.size()));
    }
    rows.resize(limit);
  }
  return CityTable(north_pole_depot(), std::move(rows));
}

inline CityTable load_cities(const std::filesystem::path& path, double buffer_min,
                             std::size_t limit) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  return parse_cities(in, buffer_min, limit, path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Convergence series

inline std::string convergence_csv(const std::vector<ConvergenceRecord>& records) {
  std::string out(kConvergenceHeader);
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.iteration);
    out += ',' + detail::format_sci(r.best_objective_j, 12);
    out += ',' + detail::format_fixed(r.best_distance_m, 3);
    out += ',' + std::to_string(r.best_daylight_count);
    out += ',' + detail::format_fixed(r.epsilon, 9);
    out += ',' + detail::format_fixed(r.v_default_mps, 6);
    out += '\n';
  }
  return out;
}

inline std::vector<ConvergenceRecord> parse_convergence_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || detail::strip_cr(line) != kConvergenceHeader) {
    throw DataError("convergence: unexpected header");
  }
  std::vector<ConvergenceRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(detail::strip_cr(line));
    if (f.size() != 6) throw DataError("convergence:" + std::to_string(line_no) + ": bad field count");
    ConvergenceRecord r;
    r.iteration = detail::parse_number<std::size_t>(f[0], "iteration");
    r.best_objective_j = detail::parse_number<double>(f[1], "objective");
    r.best_distance_m = detail::parse_number<double>(f[2], "distance");
    r.best_daylight_count = detail::parse_number<std::size_t>(f[3], "daylight count");
    r.epsilon = detail::parse_number<double>(f[4], "epsilon");
    r.v_default_mps = detail::parse_number<double>(f[5], "default speed");
    out.push_back(r);
  }
  return out;
}

inline void write_convergence(const std::vector<ConvergenceRecord>& records,
                              const std::filesystem::path& path) {
  write_text_file(path, convergence_csv(records));
}

// Route geometry

namespace detail {

inline bool at_pole(const geo::GeoPoint& p) { return std::abs(p.lat()) > 90.0 - 1e-9; }

/// Great-circle samples no more than `max_step_m` apart. Longitude at a pole is
/// undefined, so pole samples borrow the longitude of their neighbour.
inline std::vector<std::pair<double, double>> sample_leg(const geo::GeoPoint& a,
                                                         const geo::GeoPoint& b,
                                                         double max_step_m) {
  const double d = geo::great_circle_distance(a, b);
  const auto segments = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(d / max_step_m)));
  std::vector<geo::GeoPoint> pts;
  pts.reserve(segments + 1);
  for (std::size_t s = 0; s <= segments; ++s) {
    pts.push_back(s == 0 ? a : s == segments ? b
                                             : geo::interpolate(a, b, static_cast<double>(s) /
                                                                          static_cast<double>(segments)));
  }
  std::vector<std::pair<double, double>> lonlat;
  lonlat.reserve(pts.size());
  for (const auto& p : pts) lonlat.emplace_back(p.lon(), p.lat());
  if (pts.size() >= 2) {
    if (at_pole(pts.front())) lonlat.front().first = lonlat[1].first;
    if (at_pole(pts.back())) lonlat.back().first = lonlat[lonlat.size() - 2].first;
  }
  return lonlat;
}

/// Cuts a polyline wherever it jumps across the antimeridian; the cut points
/// sit exactly on +/-180 with the interpolated crossing latitude.
inline std::vector<std::vector<std::pair<double, double>>> split_antimeridian(
    const std::vector<std::pair<double, double>>& line) {
  std::vector<std::vector<std::pair<double, double>>> parts(1);
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (k > 0) {
      const auto [lon0, lat0] = line[k - 1];
      const auto [lon1, lat1] = line[k];
      if (std::abs(lon1 - lon0) > 180.0) {
        const double edge = lon0 > 0.0 ? 180.0 : -180.0;
        const double lon1_unwrapped = lon1 + (lon0 > 0.0 ? 360.0 : -360.0);
        const double f = (edge - lon0) / (lon1_unwrapped - lon0);
        const double lat_cross = lat0 + f * (lat1 - lat0);
        parts.back().emplace_back(edge, lat_cross);
        parts.emplace_back();
        parts.back().emplace_back(-edge, lat_cross);
      }
    }
    parts.back().push_back(line[k]);
  }
  return parts;
}

}  // namespace detail

inline nlohmann::json route_geojson(const TourEvaluation& ev, const CityTable& cities,
                                    double max_step_m = 100'000.0) {
  using nlohmann::json;
  json features = json::array();
  for (std::size_t k = 0; k < ev.legs.size(); ++k) {
    const LegRecord& leg = ev.legs[k];
    const auto line = detail::sample_leg(cities[leg.from].point, cities[leg.to].point, max_step_m);
    for (const auto& part : detail::split_antimeridian(line)) {
      json coords = json::array();
      for (const auto& [lon, lat] : part) coords.push_back({lon, lat});
      features.push_back({
          {"type", "Feature"},
          {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
          {"properties",
           {{"leg_index", k + 1},
            {"from", cities[leg.from].name},
            {"to", cities[leg.to].name},
            {"depart_utc", temporal::format_iso(leg.depart)},
            {"arrive_utc", temporal::format_iso(leg.arrive)},
            {"speed_kmh", physics::mps_to_kmh(leg.speed_mps)},
            {"work_J", leg.work_j},
            {"daylight", leg.daylight}}},
      });
    }
  }
  for (const City& c : cities.vertices()) {
    json props = {{"name", c.name}, {"population", c.population}};
    props["dusk_utc"] = c.window ? json(temporal::format_iso(c.window->dusk_utc)) : json(nullptr);
    props["dawn_utc"] = c.window ? json(temporal::format_iso(c.window->dawn_utc)) : json(nullptr);
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Point"}, {"coordinates", {c.point.lon(), c.point.lat()}}}},
        {"properties", props},
    });
  }
  return json{{"type", "FeatureCollection"}, {"features", features}};
}

inline void write_route_geojson(const TourEvaluation& ev, const CityTable& cities,
                                const std::filesystem::path& path) {
  write_text_file(path, route_geojson(ev, cities).dump(1) + "\n");
}

// Window utilisation schedule

inline std::string gantt_csv(const TourEvaluation& ev, const CityTable& cities) {
  std::string out(kGanttHeader);
  out += '\n';
  std::size_t stop = 0;
  for (const LegRecord& leg : ev.legs) {
    if (leg.to == kDepot) continue;
    const City& c = cities[leg.to];
    ++stop;
    out += std::to_string(stop) + ',' + csv_field(c.name) + ',';
    out += c.window ? temporal::format_iso(c.window->dusk_utc) : std::string();
    out += ',';
    out += c.window ? temporal::format_iso(c.window->dawn_utc) : std::string();
    out += ',' + temporal::format_iso(leg.arrive) + '\n';
  }
  return out;
}

inline void write_gantt_csv(const TourEvaluation& ev, const CityTable& cities,
                            const std::filesystem::path& path) {
  write_text_file(path, gantt_csv(ev, cities));
}

}  // namespace tsap::dataio
