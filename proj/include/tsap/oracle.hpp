#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsap/city.hpp"
#include "tsap/config.hpp"
#include "tsap/evaluator.hpp"

namespace tsap {

inline constexpr std::size_t kOracleMaxCities = 9;

struct OracleResult {
  Tour best_tour;
  TourEvaluation best_evaluation;
  double best_objective_j = 0.0;
  std::size_t enumerated = 0;
};

/// Exhaustive search over all N! visit orders, each scored the way the colony
/// scores its ants (rogue-ant check included). Ties go to the lexicographically
/// smallest kept sequence.
inline OracleResult brute_force(const CityTable& cities, temporal::Instant start, double v_default,
                                const SolverConfig& cfg) {
  const std::size_t n = cities.delivery_count();
  if (n == 0) throw std::invalid_argument("oracle needs at least one delivery city");
  if (n > kOracleMaxCities) {
    throw std::invalid_argument("oracle refuses N = " + std::to_string(n) + " (limit is " +
                                std::to_string(kOracleMaxCities) + ")");
  }

  std::vector<CityIndex> order(n);
  std::iota(order.begin(), order.end(), CityIndex{1});

  OracleResult out;
  bool have = false;
  do {
    RogueResult r = rogue_check(Tour::from_interior(order), cities, start, v_default, cfg);
    ++out.enumerated;
    const double j = r.evaluation.objective_j;
    if (!have || j < out.best_objective_j ||
        (j == out.best_objective_j && r.kept.sequence < out.best_tour.sequence)) {
      out.best_objective_j = j;
      out.best_tour = std::move(r.kept);
      out.best_evaluation = std::move(r.evaluation);
      have = true;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace tsap
