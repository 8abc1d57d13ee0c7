#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tsap/city.hpp"
#include "tsap/config.hpp"
#include "tsap/temporal.hpp"

namespace tsap::testing {

inline City windowless(std::string name, double lat, double lon, std::uint64_t pop) {
  return City{std::move(name), geo::GeoPoint(lat, lon), pop, std::nullopt, 0.0};
}

inline City windowed(std::string name, double lat, double lon, std::uint64_t pop, double dusk_min,
                     double dawn_min) {
  return City{std::move(name), geo::GeoPoint(lat, lon), pop,
              temporal::DarknessWindow{temporal::Instant(dusk_min), temporal::Instant(dawn_min)}, 0.0};
}

/// Three windowless cities; with a constant 1000 m/s the objective is pure work.
inline CityTable three_city_table() {
  return CityTable({windowless("A", 60.0, 0.0, 1), windowless("B", 60.0, 90.0, 2),
                    windowless("C", 45.0, -90.0, 1)});
}

/// Spherical law of cosines; an independent route to the haversine distance.
inline double law_of_cosines_m(double lat1, double lon1, double lat2, double lon2) {
  const double k = std::numbers::pi / 180.0;
  const double c = std::sin(lat1 * k) * std::sin(lat2 * k) +
                   std::cos(lat1 * k) * std::cos(lat2 * k) * std::cos((lon2 - lon1) * k);
  return 6'371'000.0 * std::acos(std::clamp(c, -1.0, 1.0));
}

/// A random instance with darkness windows spread over a ~30 h span.
inline CityTable random_instance(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lat(-45.0, 65.0), lon(-180.0, 180.0);
  std::uniform_int_distribution<std::uint64_t> pop(100'000, 20'000'000);
  std::vector<City> cities;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = lon(rng);
    // dusk rolls westward with longitude, as it does on the real globe
    const double dusk = (180.0 - lo) / 15.0 * 60.0 + 120.0;
    std::uniform_real_distribution<double> len(9.0 * 60.0, 15.0 * 60.0);
    cities.push_back(windowed("city" + std::to_string(i), lat(rng), lo, pop(rng), dusk, dusk + len(rng)));
  }
  return CityTable(std::move(cities));
}

inline SolverConfig small_config(std::size_t iterations = 200, std::size_t ants = 20) {
  SolverConfig cfg;
  cfg.iterations = iterations;
  cfg.ants = ants;
  cfg.start_instant = temporal::Instant(0.0);
  return cfg;
}

}  // namespace tsap::testing
