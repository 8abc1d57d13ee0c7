#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsap/city.hpp"
#include "tsap/config.hpp"
#include "tsap/physics.hpp"
#include "tsap/temporal.hpp"

namespace tsap {

/// Closed visit sequence 0, c1, ..., cN, 0.
struct Tour {
  std::vector<CityIndex> sequence;

  static Tour from_interior(const std::vector<CityIndex>& interior) {
    Tour t;
    t.sequence.reserve(interior.size() + 2);
    t.sequence.push_back(kDepot);
    t.sequence.insert(t.sequence.end(), interior.begin(), interior.end());
    t.sequence.push_back(kDepot);
    return t;
  }

  Tour reversed() const {
    Tour t{sequence};
    std::reverse(t.sequence.begin(), t.sequence.end());
    return t;
  }

  /// Throws std::invalid_argument unless this is a closed permutation of 1..n.
  void validate(std::size_t n) const {
    if (sequence.size() != n + 2 || sequence.front() != kDepot || sequence.back() != kDepot) {
      throw std::invalid_argument("tour must start and end at the depot and have " +
                                  std::to_string(n + 2) + " entries");
    }
    std::vector<bool> seen(n + 1, false);
    for (std::size_t k = 1; k + 1 < sequence.size(); ++k) {
      const CityIndex c = sequence[k];
      if (c == kDepot || c > n || seen[c]) {
        throw std::invalid_argument("tour interior is not a permutation of 1.." + std::to_string(n));
      }
      seen[c] = true;
    }
  }

  friend bool operator==(const Tour&, const Tour&) = default;
};

struct LegRecord {
  CityIndex from = kDepot;
  CityIndex to = kDepot;
  temporal::Instant depart;
  temporal::Instant arrive;
  double speed_mps = 0.0;
  double distance_m = 0.0;
  double area_m2 = 0.0;
  double work_j = 0.0;
  bool daylight = false;
};

struct TourEvaluation {
  std::vector<LegRecord> legs;
  double total_work_j = 0.0;
  std::size_t daylight_count = 0;
  /// Total work plus one daylight penalty per violating leg.
  double objective_j = 0.0;
  double total_distance_m = 0.0;
  double duration_h = 0.0;
  /// Cumulative population fraction after each delivery, in visit order.
  std::vector<double> population_served_by_leg;
};

/// Flies `tour` from `start` with `v_default` as the fallback cruise speed.
/// In distance-only mode every leg is flown at `v_default`.
///
/// Gifts for city j are still on board during the leg into j, so that leg's
/// cross-section uses the payload before delivery. A leg with no feasible
/// speed is flown at `v_default` and flagged daylight. There is no waiting on
/// the ground: each departure is the previous arrival.
inline TourEvaluation evaluate(const Tour& tour, const CityTable& cities, temporal::Instant start,
                               double v_default, const SolverConfig& cfg) {
  tour.validate(cities.delivery_count());

  TourEvaluation ev;
  ev.legs.reserve(tour.sequence.size() - 1);
  ev.population_served_by_leg.reserve(cities.delivery_count());

  physics::PayloadState payload{0, std::max<std::uint64_t>(cities.total_population(), 1)};
  temporal::Instant clock = start;

  for (std::size_t k = 0; k + 1 < tour.sequence.size(); ++k) {
    const CityIndex from = tour.sequence[k];
    const CityIndex to = tour.sequence[k + 1];
    const City& dest = cities[to];

    LegRecord leg;
    leg.from = from;
    leg.to = to;
    leg.depart = clock;
    leg.distance_m = cities.distance(from, to);
    leg.area_m2 = physics::cross_section(payload);

    if (cfg.mode == Mode::full) {
      const auto speed = physics::select_speed(leg.distance_m, clock, dest.window, v_default,
                                               cfg.speed_bounds);
      leg.speed_mps = speed.value_or(v_default);
      leg.arrive = clock + physics::flight_minutes(leg.distance_m, leg.speed_mps);
      leg.daylight = !speed.has_value();
    } else {
      leg.speed_mps = v_default;
      leg.arrive = clock + physics::flight_minutes(leg.distance_m, leg.speed_mps);
      leg.daylight = dest.window && !temporal::is_dark(*dest.window, leg.arrive);
    }
    leg.work_j = physics::aero_work(leg.distance_m, leg.speed_mps, leg.area_m2);

    ev.total_work_j += leg.work_j;
    ev.total_distance_m += leg.distance_m;
    if (leg.daylight) ++ev.daylight_count;

    if (to != kDepot) {
      payload.delivered_population += dest.population;
      ev.population_served_by_leg.push_back(static_cast<double>(payload.delivered_population) /
                                            static_cast<double>(payload.total_population));
    }
    clock = leg.arrive;
    ev.legs.push_back(leg);
  }

  ev.objective_j = ev.total_work_j + static_cast<double>(ev.daylight_count) * cfg.omega;
  ev.duration_h = (clock - start) / 60.0;
  return ev;
}

struct RogueResult {
  Tour kept;
  TourEvaluation evaluation;
  bool reversed = false;
};

/// Evaluates the tour and its reversal from the same departure instant and
/// keeps the cheaper direction; the forward tour wins ties.
inline RogueResult rogue_check(const Tour& tour, const CityTable& cities, temporal::Instant start,
                               double v_default, const SolverConfig& cfg) {
  TourEvaluation fwd = evaluate(tour, cities, start, v_default, cfg);
  Tour rev_tour = tour.reversed();
  TourEvaluation rev = evaluate(rev_tour, cities, start, v_default, cfg);
  if (rev.objective_j < fwd.objective_j) {
    return RogueResult{std::move(rev_tour), std::move(rev), true};
  }
  return RogueResult{tour, std::move(fwd), false};
}

/// Index (1-based leg count) at which the cumulative population first reaches
/// `fraction`; 0 if it never does.
inline std::size_t legs_to_serve(const TourEvaluation& ev, double fraction) {
  for (std::size_t k = 0; k < ev.population_served_by_leg.size(); ++k) {
    if (ev.population_served_by_leg[k] >= fraction) return k + 1;
  }
  return 0;
}

}  // namespace tsap
