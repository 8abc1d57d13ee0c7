#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsap/geo.hpp"
#include "tsap/temporal.hpp"

namespace tsap {

using CityIndex = std::size_t;

inline constexpr CityIndex kDepot = 0;

struct City {
  std::string name;
  geo::GeoPoint point;
  std::uint64_t population = 0;
  /// Absent for the depot, which sits in polar night all tour long.
  std::optional<temporal::DarknessWindow> window;
  double utc_offset_hours = 0.0;
};

inline City north_pole_depot() {
  return City{"North Pole", geo::GeoPoint(90.0, 0.0), 0, std::nullopt, 0.0};
}

/// Immutable vertex set: index 0 is the depot, 1..N are deliveries.
class CityTable {
 public:
  CityTable(City depot, std::vector<City> deliveries) {
    if (depot.population != 0 || depot.window) {
      throw std::invalid_argument("depot must have zero population and no darkness window");
    }
    vertices_.reserve(deliveries.size() + 1);
    vertices_.push_back(std::move(depot));
    for (auto& c : deliveries) {
      if (c.population == 0) {
        throw std::invalid_argument("delivery city '" + c.name + "' has zero population");
      }
      total_population_ += c.population;
      vertices_.push_back(std::move(c));
    }
    const std::size_t n = vertices_.size();
    distance_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = geo::great_circle_distance(vertices_[i].point, vertices_[j].point);
        distance_[i * n + j] = d;
        distance_[j * n + i] = d;
      }
    }
  }

  explicit CityTable(std::vector<City> deliveries)
      : CityTable(north_pole_depot(), std::move(deliveries)) {}

  /// Number of delivery cities N (the depot is not counted).
  std::size_t delivery_count() const noexcept { return vertices_.size() - 1; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }

  const City& operator[](CityIndex i) const { return vertices_.at(i); }
  const std::vector<City>& vertices() const noexcept { return vertices_; }

  double distance(CityIndex i, CityIndex j) const noexcept {
    return distance_[i * vertices_.size() + j];
  }

  std::uint64_t total_population() const noexcept { return total_population_; }

 private:
  std::vector<City> vertices_;
  std::vector<double> distance_;
  std::uint64_t total_population_ = 0;
};

}  // namespace tsap
