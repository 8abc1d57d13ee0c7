#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tsap/physics.hpp"
#include "tsap/temporal.hpp"

namespace tsap {

enum class Mode {
  /// Darkness-aware, work-minimising colony with all extensions enabled.
  full,
  /// Classic ACO baseline: inverse-distance heuristic, tours ranked by length.
  distance_only,
};

inline std::string_view to_string(Mode m) {
  return m == Mode::full ? "full" : "distance-only";
}

inline Mode parse_mode(std::string_view s) {
  if (s == "full") return Mode::full;
  if (s == "distance-only" || s == "distance_only") return Mode::distance_only;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

/// Solver parameters. Defaults reproduce the published parameter table; the
/// evaporation rate, elitist weight, heuristic penalty and initial trail level
/// are not published and are chosen here.
struct SolverConfig {
  std::size_t iterations = 5000;
  std::size_t ants = 75;
  double alpha = 3.0;
  double beta = 2.0;
  double deposit_factor = 1.0;
  double evaporation_rate = 0.10;
  double tau_min = 0.1;
  double tau_max = 10.0;
  double tau_init = 1.0;
  double epsilon_start = 0.40;
  double epsilon_min = 0.05;
  double v_default_init_mps = physics::kmh_to_mps(7'650.0);
  physics::SpeedBounds speed_bounds{};
  double omega = 2.1e100;
  double elitist_weight = 2.0;
  double heuristic_penalty_factor = 1e-12;
  Mode mode = Mode::full;
  std::uint64_t rng_seed = 1;
  temporal::Instant start_instant{};
  /// Worker threads for ant construction; 0 picks the hardware concurrency.
  std::size_t threads = 1;

  void validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("SolverConfig: " + what); };
    if (iterations == 0) fail("iterations must be > 0");
    if (ants == 0) fail("ants must be > 0");
    if (!(alpha >= 0.0) || !(beta >= 0.0)) fail("alpha and beta must be >= 0");
    if (!(evaporation_rate > 0.0 && evaporation_rate < 1.0)) fail("evaporation rate must lie in (0, 1)");
    if (!(tau_min > 0.0 && tau_min <= tau_max)) fail("pheromone bounds must satisfy 0 < tau_min <= tau_max");
    if (!(epsilon_min > 0.0 && epsilon_start >= epsilon_min && epsilon_start <= 1.0)) {
      fail("exploration must satisfy 0 < epsilon_min <= epsilon_start <= 1");
    }
    if (!(deposit_factor > 0.0)) fail("deposit factor must be > 0");
    if (!(elitist_weight >= 0.0)) fail("elitist weight must be >= 0");
    if (!(heuristic_penalty_factor > 0.0 && heuristic_penalty_factor <= 1.0)) {
      fail("heuristic penalty factor must lie in (0, 1]");
    }
    if (!(omega >= 0.0)) fail("daylight penalty must be >= 0");
    speed_bounds.validate();
    if (!(v_default_init_mps >= speed_bounds.v_min_mps && v_default_init_mps <= speed_bounds.v_max_mps)) {
      fail("initial default speed outside speed bounds");
    }
    if (!std::isfinite(start_instant.minutes) || start_instant.minutes < 0.0) {
      fail("start instant must be finite and not before 2025-12-24T00:00Z");
    }
  }
};

}  // namespace tsap
