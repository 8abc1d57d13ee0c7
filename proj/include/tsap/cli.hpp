#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <limits>
#include <optional>
#include <sstream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tsap/city.hpp"
#include "tsap/colony.hpp"
#include "tsap/config.hpp"
#include "tsap/dataio.hpp"
#include "tsap/evaluator.hpp"
#include "tsap/oracle.hpp"
#include "tsap/physics.hpp"
#include "tsap/temporal.hpp"

namespace tsap::cli {

struct Options {
  std::string cities;
  std::size_t n = 40;
  std::size_t iterations = 5000;
  std::size_t ants = 75;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::string mode = "full";
  std::string start_utc;
  int buffer_min = 15;
  double evaporation = 0.10;
  std::string out = "out";
  std::size_t threads = 1;
  std::vector<std::size_t> sizes{15, 30};
  bool check = false;
};

inline constexpr std::string_view kStartBeforeDusk = "earliest-dusk-1h";

/// Departure at the start of the delivery night's time axis, 2025-12-24T00:00Z.
inline temporal::Instant default_start() { return temporal::Instant(0.0); }

/// Earliest buffered dusk among the delivery cities, minus one hour.
inline temporal::Instant start_before_earliest_dusk(const CityTable& cities) {
  double earliest = std::numeric_limits<double>::infinity();
  for (CityIndex i = 1; i < cities.vertex_count(); ++i) {
    if (cities[i].window) earliest = std::min(earliest, cities[i].window->dusk_utc.minutes);
  }
  if (!std::isfinite(earliest)) earliest = 60.0;
  return temporal::Instant(std::max(0.0, earliest - 60.0));
}

inline SolverConfig make_config(const Options& o, const CityTable& cities, Mode mode,
                                std::uint64_t seed) {
  SolverConfig cfg;
  cfg.iterations = o.iterations;
  cfg.ants = o.ants;
  cfg.evaporation_rate = o.evaporation;
  cfg.mode = mode;
  cfg.rng_seed = seed;
  cfg.threads = o.threads;
  if (o.start_utc.empty()) {
    cfg.start_instant = default_start();
  } else if (o.start_utc == kStartBeforeDusk) {
    cfg.start_instant = start_before_earliest_dusk(cities);
  } else {
    cfg.start_instant = temporal::parse_iso(o.start_utc);
  }
  cfg.validate();
  return cfg;
}

inline nlohmann::json config_json(const SolverConfig& c) {
  return {
      {"iterations", c.iterations},
      {"ants", c.ants},
      {"alpha", c.alpha},
      {"beta", c.beta},
      {"deposit_factor", c.deposit_factor},
      {"evaporation_rate", c.evaporation_rate},
      {"tau_min", c.tau_min},
      {"tau_max", c.tau_max},
      {"tau_init", c.tau_init},
      {"epsilon_start", c.epsilon_start},
      {"epsilon_min", c.epsilon_min},
      {"v_default_init_kmh", physics::mps_to_kmh(c.v_default_init_mps)},
      {"v_min_kmh", physics::mps_to_kmh(c.speed_bounds.v_min_mps)},
      {"v_max_kmh", physics::mps_to_kmh(c.speed_bounds.v_max_mps)},
      {"omega_J", c.omega},
      {"elitist_weight", c.elitist_weight},
      {"heuristic_penalty_factor", c.heuristic_penalty_factor},
      {"mode", std::string(to_string(c.mode))},
      {"rng_seed", c.rng_seed},
      {"start_utc", temporal::format_iso(c.start_instant)},
      {"threads", c.threads},
  };
}

/// "124,539"
inline std::string thousands(double value) {
  auto v = static_cast<long long>(std::llround(value));
  const bool neg = v < 0;
  std::string digits = std::to_string(neg ? -v : v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return neg ? "-" + out : out;
}

inline std::string summary_line(const TourEvaluation& ev) {
  char hours[32];
  std::snprintf(hours, sizeof hours, "%.2f", ev.duration_h);
  char obj[32];
  std::snprintf(obj, sizeof obj, "%.3e", ev.objective_j);
  std::string violations = ev.daylight_count == 0
                               ? std::string("zero daylight violations")
                               : std::to_string(ev.daylight_count) + " daylight violation" +
                                     (ev.daylight_count == 1 ? "" : "s");
  return thousands(ev.total_distance_m / 1000.0) + " km in " + hours + " hours with " +
         violations + " (objective " + obj + " J)";
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Writes every artifact or none: on failure anything already written is removed.
inline void write_artifacts(const std::filesystem::path& dir,
                            const std::vector<std::pair<std::string, std::string>>& files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw dataio::IoError("cannot create output directory '" + dir.string() + "'");
  std::vector<std::filesystem::path> written;
  try {
    for (const auto& [name, content] : files) {
      dataio::write_text_file(dir / name, content);
      written.push_back(dir / name);
    }
  } catch (...) {
    for (const auto& p : written) std::filesystem::remove(p, ec);
    throw;
  }
}

struct LoadedDataset {
  CityTable cities;
  std::string hash;
};

inline LoadedDataset load_dataset(const Options& o, std::size_t n) {
  if (o.cities.empty()) throw dataio::IoError("--cities is required");
  const std::string bytes = dataio::read_text_file(o.cities);
  std::istringstream in(bytes);
  return LoadedDataset{dataio::parse_cities(in, o.buffer_min, n, o.cities),
                       "fnv1a64:" + dataio::content_hash(bytes)};
}

inline nlohmann::json evaluation_summary(const TourEvaluation& ev, const CityTable& cities,
                                         const Tour& tour) {
  std::vector<std::string> names;
  for (CityIndex c : tour.sequence) names.push_back(cities[c].name);
  return {
      {"objective_J", ev.objective_j},
      {"total_work_J", ev.total_work_j},
      {"distance_km", ev.total_distance_m / 1000.0},
      {"duration_h", ev.duration_h},
      {"daylight_count", ev.daylight_count},
      {"legs_to_half_population", legs_to_serve(ev, 0.5)},
      {"population_served_by_leg", ev.population_served_by_leg},
      {"tour", names},
  };
}

inline int cmd_solve(const Options& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedDataset data = load_dataset(o, o.n);
  const SolverConfig cfg = make_config(o, data.cities, parse_mode(o.mode), o.seed);
  const SolveResult result = solve(cfg, data.cities);
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const TourEvaluation& ev = result.best.evaluation;

  nlohmann::json manifest = {
      {"command", "solve"},
      {"config", config_json(cfg)},
      {"dataset", {{"path", o.cities}, {"hash", data.hash}, {"n", data.cities.delivery_count()},
                   {"buffer_min", o.buffer_min}}},
      {"artifacts", {"convergence.csv", "route.geojson", "gantt.csv", "manifest.json"}},
      {"runtime_s", runtime},
      {"final_v_default_kmh", physics::mps_to_kmh(result.final_v_default_mps)},
      {"best_v_default_kmh", physics::mps_to_kmh(result.best.v_default_mps)},
      {"summary", evaluation_summary(ev, data.cities, result.best.tour)},
  };
  write_artifacts(o.out, {
                             {"convergence.csv", dataio::convergence_csv(result.history)},
                             {"route.geojson", dataio::route_geojson(ev, data.cities).dump(1) + "\n"},
                             {"gantt.csv", dataio::gantt_csv(ev, data.cities)},
                             {"manifest.json", manifest.dump(2) + "\n"},
                         });
  out << "[" << to_string(cfg.mode) << "] N=" << data.cities.delivery_count() << " seed=" << o.seed
      << ": " << summary_line(ev) << "\n";
  return 0;
}

inline int cmd_compare(const Options& o, std::ostream& out) {
  if (o.seeds.empty()) throw std::invalid_argument("--seeds must not be empty");
  std::string csv = "n,seed,mode,final_objective_J,final_distance_m,daylight_count\n";
  for (std::size_t n : o.sizes) {
    const LoadedDataset data = load_dataset(o, n);
    for (Mode mode : {Mode::full, Mode::distance_only}) {
      std::vector<double> objectives;
      std::size_t with_violations = 0;
      for (std::uint64_t seed : o.seeds) {
        const SolverConfig cfg = make_config(o, data.cities, mode, seed);
        const SolveResult r = solve(cfg, data.cities);
        const TourEvaluation& ev = r.best.evaluation;
        char row[256];
        std::snprintf(row, sizeof row, "%zu,%llu,%s,%.12e,%.3f,%zu\n", n,
                      static_cast<unsigned long long>(seed), std::string(to_string(mode)).c_str(),
                      ev.objective_j, ev.total_distance_m, ev.daylight_count);
        csv += row;
        objectives.push_back(ev.objective_j);
        if (ev.daylight_count > 0) ++with_violations;
      }
      char line[160];
      std::snprintf(line, sizeof line, "N=%zu %-13s median objective %.4e J, %zu/%zu seeds with daylight violations\n",
                    n, std::string(to_string(mode)).c_str(), median(objectives), with_violations,
                    o.seeds.size());
      out << line;
    }
  }
  write_artifacts(o.out, {{"compare.csv", csv}});
  return 0;
}

inline int cmd_oracle(const Options& o, std::ostream& out) {
  if (o.n > kOracleMaxCities) {
    throw std::invalid_argument("oracle refuses N = " + std::to_string(o.n) + " (limit is " +
                                std::to_string(kOracleMaxCities) + ")");
  }
  const LoadedDataset data = load_dataset(o, o.n);
  const SolverConfig base = make_config(o, data.cities, Mode::full, o.seed);
  const OracleResult opt =
      brute_force(data.cities, base.start_instant, base.v_default_init_mps, base);

  std::vector<std::string> names;
  for (CityIndex c : opt.best_tour.sequence) names.push_back(data.cities[c].name);
  nlohmann::json golden = {
      {"n", data.cities.delivery_count()},
      {"dataset", {{"path", o.cities}, {"hash", data.hash}}},
      {"start_utc", temporal::format_iso(base.start_instant)},
      {"v_default_kmh", physics::mps_to_kmh(base.v_default_init_mps)},
      {"best_tour", opt.best_tour.sequence},
      {"best_tour_names", names},
      {"best_objective_J", opt.best_objective_j},
      {"daylight_count", opt.best_evaluation.daylight_count},
      {"enumerated", opt.enumerated},
  };
  char line[128];
  std::snprintf(line, sizeof line, "oracle N=%zu: optimum %.6e J over %zu permutations\n",
                data.cities.delivery_count(), opt.best_objective_j, opt.enumerated);
  out << line;

  if (o.check) {
    nlohmann::json checks = nlohmann::json::array();
    std::size_t within = 0;
    for (std::uint64_t seed : o.seeds) {
      const SolverConfig cfg = make_config(o, data.cities, Mode::full, seed);
      const SolveResult r = solve(cfg, data.cities);
      // the colony may have lowered its default speed; compare at the same one
      const double v = r.best.v_default_mps;
      const double reference =
          v == base.v_default_init_mps
              ? opt.best_objective_j
              : brute_force(data.cities, cfg.start_instant, v, cfg).best_objective_j;
      const double gap = (r.best.evaluation.objective_j - reference) / reference;
      if (gap <= 0.02) ++within;
      checks.push_back({{"seed", seed},
                        {"colony_objective_J", r.best.evaluation.objective_j},
                        {"oracle_objective_J", reference},
                        {"v_default_kmh", physics::mps_to_kmh(v)},
                        {"gap", gap}});
      std::snprintf(line, sizeof line, "  seed %llu: colony %.6e J, oracle %.6e J, gap %.4f%%\n",
                    static_cast<unsigned long long>(seed), r.best.evaluation.objective_j, reference,
                    100.0 * gap);
      out << line;
    }
    golden["check"] = checks;
    out << "  within 2%: " << within << "/" << o.seeds.size() << " seeds\n";
  }
  write_artifacts(o.out, {{"oracle.json", golden.dump(2) + "\n"}});
  return 0;
}

inline void add_shared_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--cities", o.cities, "City dataset CSV")->required();
  cmd.add_option("--n", o.n, "Number of most populous cities to keep");
  cmd.add_option("--iterations", o.iterations, "Colony iterations R");
  cmd.add_option("--ants", o.ants, "Ants per iteration m");
  cmd.add_option("--seed", o.seed, "RNG seed");
  cmd.add_option("--seeds", o.seeds, "Comma-separated seed list")->delimiter(',');
  cmd.add_option("--mode", o.mode, "full or distance-only")
      ->check(CLI::IsMember({"full", "distance-only"}));
  cmd.add_option("--start-utc", o.start_utc,
                 "Departure from the depot, ISO-8601 UTC, or 'earliest-dusk-1h' "
                 "(default: 2025-12-24T00:00:00Z)");
  cmd.add_option("--buffer-min", o.buffer_min, "Darkness buffer trimmed off each window end")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--evaporation", o.evaporation, "Pheromone evaporation rate");
  cmd.add_option("--out", o.out, "Output directory");
  cmd.add_option("--threads", o.threads, "Ant construction threads (0 = all cores)");
}

/// Entry point shared by the tsap executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Darkness-constrained, energy-aware ant colony tour planner"};
  app.require_subcommand(1);
  Options o;

  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and write all artifacts");
  add_shared_flags(*solve_cmd, o);

  auto* compare_cmd = app.add_subcommand("compare", "Full model versus distance-only baseline");
  add_shared_flags(*compare_cmd, o);
  compare_cmd->add_option("--sizes", o.sizes, "Comma-separated instance sizes")->delimiter(',');

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact brute-force optimum for N <= 9");
  add_shared_flags(*oracle_cmd, o);
  oracle_cmd->add_flag("--check", o.check, "Also run the colony on each seed and report its gap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*solve_cmd) return cmd_solve(o, out);
    if (*compare_cmd) return cmd_compare(o, out);
    if (*oracle_cmd) return cmd_oracle(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tsap::cli
