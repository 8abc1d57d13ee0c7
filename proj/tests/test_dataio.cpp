#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "tsap/colony.hpp"
#include "tsap/dataio.hpp"

namespace tf = tsap::testing;

using namespace tsap;
using nlohmann::json;
using tsap::temporal::Instant;

namespace {

const std::string kDataset = std::string(TSAP_DATA_DIR) + "/capitals.csv";

CityTable parse(const std::string& body, std::size_t limit = 0) {
  std::istringstream in(std::string(dataio::kCityHeader) + "\n" + body);
  return dataio::parse_cities(in, 15.0, limit, "test.csv");
}

std::string error_of(const std::string& body) {
  try {
    parse(body);
  } catch (const dataio::DataError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Cities, LoadsBundledDataset) {
  const CityTable all = dataio::load_cities(kDataset, 15.0, 0);
  EXPECT_GE(all.delivery_count(), 40u);
  EXPECT_EQ(all[kDepot].name, "North Pole");
  EXPECT_FALSE(all[kDepot].window.has_value());
  for (CityIndex c = 2; c < all.vertex_count(); ++c) {
    EXPECT_GE(all[c - 1].population, all[c].population);
  }
  const CityTable top = dataio::load_cities(kDataset, 15.0, 40);
  EXPECT_EQ(top.delivery_count(), 40u);
  for (CityIndex c = 0; c < top.vertex_count(); ++c) EXPECT_EQ(top[c].name, all[c].name);
  const auto& tokyo = all[1];
  EXPECT_EQ(tokyo.name, "Tokyo");
  EXPECT_DOUBLE_EQ(tokyo.window->dusk_utc.minutes, 7 * 60 + 33 + 15.0);  // 16:33 JST plus buffer
}

TEST(Cities, RejectsBadRows) {
  EXPECT_NE(error_of("A,10,200,5,0,18:00,06:00\n").find("test.csv:2:"), std::string::npos);
  EXPECT_NE(error_of("A,10,10,5,0,18:00,06:00\nB,95,10,5,0,18:00,06:00\n").find("test.csv:3:"),
            std::string::npos);
  EXPECT_NE(error_of("A,10,10,0,0,18:00,06:00\n").find("population"), std::string::npos);
  EXPECT_NE(error_of("A,10,10,5,0,18:00\n").find("7 fields"), std::string::npos);
  EXPECT_NE(error_of("A,10,10,5,0,25:00,06:00\n"), "");
  EXPECT_NE(error_of("A,10,10,5,0,18:00,06:00\nA,11,11,5,0,18:00,06:00\n").find("duplicate"),
            std::string::npos);
  EXPECT_NE(error_of("Tiny,10,10,5,0,18:00,18:20\n").find("Tiny"), std::string::npos);
  EXPECT_THROW(parse("A,10,10,5,0,18:00,06:00\n", 2), dataio::DataError);
  std::istringstream bad_header("name,lat\nA,1\n");
  EXPECT_THROW(dataio::parse_cities(bad_header, 15, 0), dataio::DataError);
  EXPECT_THROW(dataio::load_cities("/nonexistent/cities.csv", 15, 0), dataio::IoError);
}

TEST(Cities, QuotedNames) {
  const CityTable t = parse("\"Washington, D.C.\",38.9,-77.0,700000,-5,16:50,07:25\n");
  EXPECT_EQ(t[1].name, "Washington, D.C.");
  EXPECT_EQ(dataio::csv_field(t[1].name), "\"Washington, D.C.\"");
}

TEST(Convergence, RoundTripAndLineCount) {
  SolverConfig cfg = tf::small_config(37, 6);
  const auto res = solve(cfg, tf::random_instance(8, 2));
  const std::string text = dataio::convergence_csv(res.history);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 38);
  EXPECT_EQ(text.substr(0, text.find('\n')), dataio::kConvergenceHeader);
  const auto back = dataio::parse_convergence_csv(text);
  ASSERT_EQ(back.size(), res.history.size());
  for (std::size_t r = 0; r < back.size(); ++r) {
    EXPECT_EQ(back[r].iteration, r);
    EXPECT_NEAR(back[r].best_objective_j, res.history[r].best_objective_j,
                std::abs(res.history[r].best_objective_j) * 1e-12);
    EXPECT_NEAR(back[r].epsilon, res.history[r].epsilon, 1e-9);
    EXPECT_EQ(back[r].best_daylight_count, res.history[r].best_daylight_count);
  }
}

TEST(Route, FeatureCounts) {
  const CityTable t({tf::windowed("A", 50, 10, 3, 0, 900), tf::windowed("B", 40, 30, 2, 0, 900)});
  const auto ev = evaluate(Tour::from_interior({1, 2}), t, Instant(0), 1000.0, tf::small_config());
  const json gj = dataio::route_geojson(ev, t);
  int lines = 0, points = 0;
  for (const auto& f : gj["features"]) {
    const auto type = f["geometry"]["type"].get<std::string>();
    lines += type == "LineString";
    points += type == "Point";
    if (type == "Point" && f["properties"]["name"] == "North Pole") {
      EXPECT_TRUE(f["properties"]["dusk_utc"].is_null());
    }
  }
  EXPECT_EQ(lines, 3);
  EXPECT_EQ(points, 3);
  EXPECT_EQ(gj["features"][0]["properties"]["leg_index"], 1);
  EXPECT_EQ(gj["features"][0]["properties"]["depart_utc"], "2025-12-24T00:00:00Z");
}

TEST(Route, SplitsAtTheAntimeridian) {
  const CityTable t({tf::windowless("Tokyo", 35.68, 139.69, 5), tf::windowless("LA", 34.05, -118.24, 4)});
  const auto ev = evaluate(Tour::from_interior({1, 2}), t, Instant(0), 1000.0, tf::small_config());
  const json gj = dataio::route_geojson(ev, t);
  std::vector<json> pacific;
  for (const auto& f : gj["features"]) {
    if (f["geometry"]["type"] != "LineString") continue;
    if (f["properties"]["leg_index"] == 2) pacific.push_back(f);
    const auto& c = f["geometry"]["coordinates"];
    for (std::size_t k = 1; k < c.size(); ++k) {
      EXPECT_LE(std::abs(c[k][0].get<double>() - c[k - 1][0].get<double>()), 180.0);
    }
  }
  ASSERT_EQ(pacific.size(), 2u);
  const auto& first = pacific[0]["geometry"]["coordinates"];
  const auto& second = pacific[1]["geometry"]["coordinates"];
  EXPECT_DOUBLE_EQ(first.back()[0].get<double>(), 180.0);
  EXPECT_DOUBLE_EQ(second.front()[0].get<double>(), -180.0);
  EXPECT_DOUBLE_EQ(first.back()[1].get<double>(), second.front()[1].get<double>());
}

TEST(Gantt, RowsFollowVisitOrder) {
  const CityTable t = dataio::load_cities(kDataset, 15.0, 12);
  SolverConfig cfg = tf::small_config(40, 10);
  const auto res = solve(cfg, t);
  const std::string text = dataio::gantt_csv(res.best.evaluation, t);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, dataio::kGanttHeader);
  std::size_t rows = 0;
  std::string prev_arrival;
  while (std::getline(in, line)) {
    const auto f = dataio::split_csv_line(line);
    ASSERT_EQ(f.size(), 5u);
    ++rows;
    EXPECT_EQ(f[0], std::to_string(rows));
    EXPECT_GE(f[4], prev_arrival);  // ISO strings sort chronologically
    prev_arrival = f[4];
  }
  EXPECT_EQ(rows, 12u);
}

TEST(Hash, StableAndSensitive) {
  EXPECT_EQ(dataio::content_hash(""), "cbf29ce484222325");
  EXPECT_EQ(dataio::content_hash("a"), "af63dc4c8601ec8c");
  EXPECT_NE(dataio::content_hash("ab"), dataio::content_hash("ba"));
}
