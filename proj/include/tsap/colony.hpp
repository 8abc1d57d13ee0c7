#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "tsap/city.hpp"
#include "tsap/config.hpp"
#include "tsap/evaluator.hpp"
#include "tsap/physics.hpp"
#include "tsap/random.hpp"

namespace tsap {

/// Directed trail intensities over vertex pairs, kept inside [tau_min, tau_max].
class PheromoneMatrix {
 public:
  PheromoneMatrix(std::size_t vertices, double tau_min, double tau_max, double initial)
      : n_(vertices), tau_min_(tau_min), tau_max_(tau_max),
        tau_(vertices * vertices, std::clamp(initial, tau_min, tau_max)) {}

  std::size_t size() const noexcept { return n_; }
  double tau_min() const noexcept { return tau_min_; }
  double tau_max() const noexcept { return tau_max_; }

  double at(CityIndex i, CityIndex j) const noexcept { return tau_[i * n_ + j]; }
  void set(CityIndex i, CityIndex j, double value) noexcept { tau_[i * n_ + j] = value; }

  void evaporate(double rate) noexcept {
    for (double& t : tau_) t *= (1.0 - rate);
  }

  void deposit(CityIndex i, CityIndex j, double amount) noexcept { tau_[i * n_ + j] += amount; }

  void deposit_along(const Tour& tour, double amount) noexcept {
    for (std::size_t k = 0; k + 1 < tour.sequence.size(); ++k) {
      deposit(tour.sequence[k], tour.sequence[k + 1], amount);
    }
  }

  void clamp() noexcept {
    for (double& t : tau_) t = std::clamp(t, tau_min_, tau_max_);
  }

  bool within_bounds() const noexcept {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        const double t = at(i, j);
        if (!(t >= tau_min_ && t <= tau_max_)) return false;
      }
    }
    return true;
  }

 private:
  std::size_t n_;
  double tau_min_;
  double tau_max_;
  std::vector<double> tau_;
};

struct ConvergenceRecord {
  std::size_t iteration = 0;
  double best_objective_j = 0.0;
  double best_distance_m = 0.0;
  std::size_t best_daylight_count = 0;
  double epsilon = 0.0;
  double v_default_mps = 0.0;
};

/// Exploration probability in iteration `iteration`: geometric decay from
/// epsilon_start that reaches epsilon_min at iteration R.
inline double epsilon_decay_factor(const SolverConfig& cfg) {
  return std::pow(cfg.epsilon_min / cfg.epsilon_start, 1.0 / static_cast<double>(cfg.iterations));
}

inline double epsilon_at(std::size_t iteration, const SolverConfig& cfg) {
  const double e = cfg.epsilon_start *
                   std::pow(epsilon_decay_factor(cfg), static_cast<double>(iteration));
  return std::max(cfg.epsilon_min, e);
}

/// Normalised tau^alpha * eta^beta over the candidates, computed in log space.
/// Falls back to uniform when no weight is representable.
inline std::vector<double> transition_probabilities(std::span<const double> tau,
                                                    std::span<const double> eta, double alpha,
                                                    double beta) {
  const std::size_t n = tau.size();
  std::vector<double> p(n, 0.0);
  if (n == 0) return p;

  std::vector<double> logw(n);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double lt = alpha == 0.0 ? 0.0 : alpha * std::log(tau[k]);
    const double le = beta == 0.0 ? 0.0 : beta * std::log(eta[k]);
    logw[k] = lt + le;
    if (logw[k] > top) top = logw[k];
  }
  double sum = 0.0;
  if (std::isfinite(top)) {
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = std::exp(logw[k] - top);
      sum += p[k];
    }
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(n));
    return p;
  }
  for (double& x : p) x /= sum;
  return p;
}

/// Everything an ant reads while building a tour. All references are read-only
/// for the duration of an iteration.
struct ConstructionContext {
  const CityTable& cities;
  const PheromoneMatrix& pheromone;
  const SolverConfig& config;
  double v_default_mps;
  double epsilon;
};

/// Desirability of one candidate edge from the ant's current position.
struct EdgeHeuristic {
  CityIndex to = kDepot;
  double eta = 0.0;
  bool feasible = true;
  double speed_mps = 0.0;
};

/// Partial tour of one ant: position, clock and payload.
class AntState {
 public:
  explicit AntState(const ConstructionContext& ctx)
      : ctx_(ctx), clock_(ctx.config.start_instant),
        visited_(ctx.cities.vertex_count(), false) {
    visited_[kDepot] = true;
    path_.reserve(ctx.cities.vertex_count() + 1);
    path_.push_back(kDepot);
    for (CityIndex c = 1; c < ctx.cities.vertex_count(); ++c) unvisited_.push_back(c);
  }

  CityIndex position() const noexcept { return path_.back(); }
  temporal::Instant clock() const noexcept { return clock_; }
  const std::vector<CityIndex>& unvisited() const noexcept { return unvisited_; }
  std::uint64_t delivered() const noexcept { return delivered_; }

  EdgeHeuristic heuristic(CityIndex to) const {
    const auto& cfg = ctx_.config;
    const double d = ctx_.cities.distance(position(), to);
    EdgeHeuristic h;
    h.to = to;
    if (cfg.mode == Mode::distance_only) {
      h.speed_mps = ctx_.v_default_mps;
      h.eta = 1.0 / std::max(d, 1.0);
      return h;
    }
    const auto speed = physics::select_speed(d, clock_, ctx_.cities[to].window,
                                             ctx_.v_default_mps, cfg.speed_bounds);
    h.feasible = speed.has_value();
    h.speed_mps = speed.value_or(ctx_.v_default_mps);
    const physics::PayloadState payload{delivered_,
                                        std::max<std::uint64_t>(ctx_.cities.total_population(), 1)};
    const double work = physics::aero_work(d, h.speed_mps, physics::cross_section(payload));
    h.eta = 1.0 / std::max(work, 1.0);
    if (!h.feasible) h.eta *= cfg.heuristic_penalty_factor;
    return h;
  }

  void advance(const EdgeHeuristic& h) {
    const double d = ctx_.cities.distance(position(), h.to);
    clock_ = clock_ + physics::flight_minutes(d, h.speed_mps);
    delivered_ += ctx_.cities[h.to].population;
    visited_[h.to] = true;
    path_.push_back(h.to);
    unvisited_.erase(std::find(unvisited_.begin(), unvisited_.end(), h.to));
  }

  Tour finish() {
    path_.push_back(kDepot);
    return Tour{path_};
  }

 private:
  const ConstructionContext& ctx_;
  temporal::Instant clock_;
  std::uint64_t delivered_ = 0;
  std::vector<bool> visited_;
  std::vector<CityIndex> path_;
  std::vector<CityIndex> unvisited_;
};

/// Builds one closed tour with epsilon-greedy selection: with probability
/// epsilon a uniformly random feasible city (any unvisited city if none is
/// feasible), otherwise the argmax of the transition rule, lowest index on ties.
inline Tour construct_tour(RandomStream& rng, const ConstructionContext& ctx) {
  AntState ant(ctx);
  std::vector<EdgeHeuristic> candidates;
  std::vector<std::size_t> feasible;
  candidates.reserve(ctx.cities.vertex_count());

  const double alpha = ctx.config.alpha;
  const double beta = ctx.config.beta;

  while (!ant.unvisited().empty()) {
    candidates.clear();
    feasible.clear();
    for (CityIndex c : ant.unvisited()) {
      candidates.push_back(ant.heuristic(c));
      if (candidates.back().feasible) feasible.push_back(candidates.size() - 1);
    }

    std::size_t pick = 0;
    if (rng.uniform() < ctx.epsilon) {
      pick = feasible.empty() ? rng.index(candidates.size()) : feasible[rng.index(feasible.size())];
    } else {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        const double tau = ctx.pheromone.at(ant.position(), candidates[k].to);
        const double score = (alpha == 0.0 ? 0.0 : alpha * std::log(tau)) +
                             (beta == 0.0 ? 0.0 : beta * std::log(candidates[k].eta));
        if (score > best) {
          best = score;
          pick = k;
        }
      }
    }
    ant.advance(candidates[pick]);
  }
  return ant.finish();
}

/// Tour kept by one ant after the rogue-ant check, with its evaluation.
struct AntResult {
  Tour tour;
  TourEvaluation evaluation;
};

/// Best tour found so far and the default speed it was evaluated under.
struct BestTour {
  Tour tour;
  TourEvaluation evaluation;
  double v_default_mps = 0.0;
};

/// Quantity the colony minimises: effective energy in full mode, length for the baseline.
inline double ranking_metric(const TourEvaluation& ev, Mode mode) noexcept {
  return mode == Mode::full ? ev.objective_j : ev.total_distance_m;
}

/// Evaporates, then deposits Q * (best / own) along every ant's tour and
/// elitist_weight * Q along the best-so-far tour, then clamps into bounds.
inline void update_pheromone(PheromoneMatrix& pheromone, std::span<const AntResult> ants,
                             const BestTour& best, const SolverConfig& cfg) {
  pheromone.evaporate(cfg.evaporation_rate);
  const double best_metric = ranking_metric(best.evaluation, cfg.mode);
  for (const AntResult& a : ants) {
    const double own = ranking_metric(a.evaluation, cfg.mode);
    const double ratio = own > 0.0 ? best_metric / own : 1.0;
    pheromone.deposit_along(a.tour, cfg.deposit_factor * ratio);
  }
  pheromone.deposit_along(best.tour, cfg.elitist_weight * cfg.deposit_factor);
  pheromone.clamp();
}

/// One smoothing step of the default cruise speed.
struct SpeedRefinement {
  std::size_t iteration = 0;
  double previous_mps = 0.0;
  double candidate_mps = 0.0;
  bool adopted = false;
  /// Adopted although the candidate is faster than the previous default.
  bool increased = false;
};

/// Evaluates the smoothed candidate 0.1 * mean(best leg speeds) + 0.9 * v_default
/// on the best tour. The candidate is adopted only if that tour stays free of
/// daylight arrivals.
inline SpeedRefinement propose_default_speed(const BestTour& best, double v_default,
                                             const CityTable& cities, const SolverConfig& cfg,
                                             TourEvaluation* reevaluated = nullptr) {
  SpeedRefinement r;
  r.previous_mps = v_default;
  double sum = 0.0;
  for (const LegRecord& leg : best.evaluation.legs) sum += leg.speed_mps;
  const double v_avg = sum / static_cast<double>(best.evaluation.legs.size());
  r.candidate_mps = 0.1 * v_avg + 0.9 * v_default;
  r.candidate_mps = std::clamp(r.candidate_mps, cfg.speed_bounds.v_min_mps, cfg.speed_bounds.v_max_mps);

  TourEvaluation ev = evaluate(best.tour, cities, cfg.start_instant, r.candidate_mps, cfg);
  r.adopted = ev.daylight_count == 0;
  r.increased = r.adopted && r.candidate_mps > v_default;
  if (reevaluated) *reevaluated = std::move(ev);
  return r;
}

using ProgressSink = std::function<void(const ConvergenceRecord&)>;

/// The iterative solver. Each step() runs one colony iteration; the object can
/// be inspected between steps.
class Colony {
 public:
  Colony(SolverConfig config, const CityTable& cities)
      : config_(std::move(config)), cities_(cities),
        pheromone_(cities.vertex_count(), config_.tau_min, config_.tau_max, config_.tau_init),
        v_default_(config_.v_default_init_mps) {
    config_.validate();
    if (cities_.delivery_count() == 0) throw std::invalid_argument("no delivery cities");
  }

  bool finished() const noexcept { return iteration_ >= config_.iterations; }
  std::size_t iteration() const noexcept { return iteration_; }
  const SolverConfig& config() const noexcept { return config_; }
  const PheromoneMatrix& pheromone() const noexcept { return pheromone_; }
  const std::optional<BestTour>& best() const noexcept { return best_; }
  double v_default_mps() const noexcept { return v_default_; }
  const std::vector<ConvergenceRecord>& history() const noexcept { return history_; }
  const std::vector<SpeedRefinement>& refinements() const noexcept { return refinements_; }
  const std::vector<AntResult>& last_ants() const noexcept { return ants_; }

  /// Default-speed refinement period: every 1% of the iteration budget.
  std::size_t refinement_period() const noexcept {
    return std::max<std::size_t>(1, config_.iterations / 100);
  }

  const ConvergenceRecord& step() {
    const std::size_t r = iteration_;
    const double eps = epsilon_at(r, config_);
    construct_all(r, eps);

    for (AntResult& a : ants_) {
      if (!best_ || ranking_metric(a.evaluation, config_.mode) <
                        ranking_metric(best_->evaluation, config_.mode)) {
        best_ = BestTour{a.tour, a.evaluation, v_default_};
      }
    }
    update_pheromone(pheromone_, ants_, *best_, config_);

    if (config_.mode == Mode::full && r % refinement_period() == 0) refine_speed(r);

    ConvergenceRecord rec;
    rec.iteration = r;
    rec.best_objective_j = best_->evaluation.objective_j;
    rec.best_distance_m = best_->evaluation.total_distance_m;
    rec.best_daylight_count = best_->evaluation.daylight_count;
    rec.epsilon = eps;
    rec.v_default_mps = v_default_;
    history_.push_back(rec);
    ++iteration_;
    return history_.back();
  }

 private:
  void construct_all(std::size_t r, double eps) {
    const std::size_t m = config_.ants;
    ants_.resize(m);
    const ConstructionContext ctx{cities_, pheromone_, config_, v_default_, eps};

    auto run_ant = [&](std::size_t k) {
      RandomStream rng = RandomStream::for_ant(config_.rng_seed, r, m, k);
      Tour tour = construct_tour(rng, ctx);
      if (config_.mode == Mode::full) {
        RogueResult kept = rogue_check(tour, cities_, config_.start_instant, v_default_, config_);
        ants_[k] = AntResult{std::move(kept.kept), std::move(kept.evaluation)};
      } else {
        TourEvaluation ev = evaluate(tour, cities_, config_.start_instant, v_default_, config_);
        ants_[k] = AntResult{std::move(tour), std::move(ev)};
      }
    };

    std::size_t workers = config_.threads == 0 ? std::thread::hardware_concurrency() : config_.threads;
    workers = std::clamp<std::size_t>(workers, 1, m);
    if (workers == 1) {
      for (std::size_t k = 0; k < m; ++k) run_ant(k);
      return;
    }
    // Ants are independent within an iteration; results land in ant-index slots.
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < m; k += workers) run_ant(k);
      });
    }
  }

  void refine_speed(std::size_t r) {
    if (!best_) return;
    TourEvaluation ev;
    SpeedRefinement s = propose_default_speed(*best_, v_default_, cities_, config_, &ev);
    s.iteration = r;
    if (s.adopted) {
      v_default_ = s.candidate_mps;
      if (ev.objective_j <= best_->evaluation.objective_j) {
        best_->evaluation = std::move(ev);
        best_->v_default_mps = s.candidate_mps;
      }
    }
    refinements_.push_back(s);
  }

  SolverConfig config_;
  const CityTable& cities_;
  PheromoneMatrix pheromone_;
  double v_default_;
  std::size_t iteration_ = 0;
  std::optional<BestTour> best_;
  std::vector<AntResult> ants_;
  std::vector<ConvergenceRecord> history_;
  std::vector<SpeedRefinement> refinements_;
};

struct SolveResult {
  BestTour best;
  std::vector<ConvergenceRecord> history;
  std::vector<SpeedRefinement> refinements;
  double final_v_default_mps = 0.0;
};

/// Runs the full iteration budget, forwarding each convergence record to `sink`.
inline SolveResult solve(const SolverConfig& config, const CityTable& cities,
                         const ProgressSink& sink = {}) {
  Colony colony(config, cities);
  while (!colony.finished()) {
    const ConvergenceRecord& rec = colony.step();
    if (sink) sink(rec);
  }
  return SolveResult{*colony.best(), colony.history(), colony.refinements(), colony.v_default_mps()};
}

}  // namespace tsap
