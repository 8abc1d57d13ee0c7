#include <gtest/gtest.h>

#include <random>

#include "tsap/temporal.hpp"

using namespace tsap::temporal;

TEST(Window, ZeroOffset) {
  const auto w = window_from_local({18, 0}, {6, 0}, 0.0, 15.0);
  EXPECT_EQ(format_iso(w.dusk_utc), "2025-12-24T18:15:00Z");
  EXPECT_EQ(format_iso(w.dawn_utc), "2025-12-25T05:45:00Z");
}

TEST(Window, TokyoLikeOffset) {
  // 16:30 JST on 24 Dec is 07:30 UTC; 06:50 JST on 25 Dec is 21:50 UTC on 24 Dec
  const auto w = window_from_local({16, 30}, {6, 50}, 9.0, 15.0);
  EXPECT_DOUBLE_EQ(w.dusk_utc.minutes, 465.0);
  EXPECT_DOUBLE_EQ(w.dawn_utc.minutes, 1295.0);
  EXPECT_EQ(format_iso(w.dusk_utc), "2025-12-24T07:45:00Z");
  EXPECT_EQ(format_iso(w.dawn_utc), "2025-12-24T21:35:00Z");
}

TEST(Window, CollapsedWindowIsRejected) {
  // 18:15 >= 18:05 after trimming both ends
  EXPECT_THROW(window_from_local({18, 0}, {18, 20}, 0.0, 15.0), std::invalid_argument);
}

TEST(Window, RejectsBadOffsetsAndBuffers) {
  EXPECT_THROW(window_from_local({18, 0}, {6, 0}, 14.5, 15.0), std::invalid_argument);
  EXPECT_THROW(window_from_local({18, 0}, {6, 0}, -12.5, 15.0), std::invalid_argument);
  EXPECT_THROW(window_from_local({18, 0}, {6, 0}, 0.0, -1.0), std::invalid_argument);
}

TEST(Window, DawnOnTheSameLocalDateWhenLaterThanDusk) {
  const auto w = window_from_local({0, 30}, {5, 0}, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(w.dusk_utc.minutes, 30.0);
  EXPECT_DOUBLE_EQ(w.dawn_utc.minutes, 300.0);
}

TEST(Window, BoundariesAreInclusive) {
  const auto w = window_from_local({18, 0}, {6, 0}, 0.0, 15.0);
  EXPECT_TRUE(is_dark(w, w.dusk_utc));
  EXPECT_TRUE(is_dark(w, w.dawn_utc));
  EXPECT_FALSE(is_dark(w, w.dawn_utc + 1.0));
  EXPECT_FALSE(is_dark(w, w.dusk_utc - 1e-9));
  EXPECT_TRUE(is_dark(w, Instant(0.5 * (w.dusk_utc.minutes + w.dawn_utc.minutes))));
}

TEST(WindowProperty, BoundariesAndOffsetMonotonicity) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> hour(15, 21), minute(0, 59), dawn_hour(4, 8), off(-11, 13);
  for (int i = 0; i < 500; ++i) {
    const ClockTime dusk{hour(rng), minute(rng)};
    const ClockTime dawn{dawn_hour(rng), minute(rng)};
    const double offset = off(rng);
    const auto w = window_from_local(dusk, dawn, offset, 15.0);
    EXPECT_LT(w.dusk_utc, w.dawn_utc);
    EXPECT_LE(w.length_minutes(), 24.0 * 60.0);
    EXPECT_TRUE(is_dark(w, w.dusk_utc) && is_dark(w, w.dawn_utc));
    EXPECT_FALSE(is_dark(w, w.dusk_utc - 1e-6));
    EXPECT_FALSE(is_dark(w, w.dawn_utc + 1e-6));

    const auto shifted = window_from_local(dusk, dawn, offset + 1.0, 15.0);
    EXPECT_DOUBLE_EQ(w.dusk_utc - shifted.dusk_utc, 60.0);
    EXPECT_DOUBLE_EQ(w.dawn_utc - shifted.dawn_utc, 60.0);
  }
}

TEST(Clock, ParsesAndRejects) {
  EXPECT_EQ(ClockTime::parse("07:05").minutes_of_day(), 425);
  EXPECT_THROW(ClockTime::parse("7:05"), std::invalid_argument);
  EXPECT_THROW(ClockTime::parse("24:00"), std::invalid_argument);
  EXPECT_THROW(ClockTime::parse("12:60"), std::invalid_argument);
  EXPECT_THROW(ClockTime::parse("ab:cd"), std::invalid_argument);
}

TEST(Iso, RoundTripsAtSecondResolution) {
  EXPECT_DOUBLE_EQ(parse_iso("2025-12-24T00:00:00Z").minutes, 0.0);
  EXPECT_DOUBLE_EQ(parse_iso("2025-12-25T01:30Z").minutes, 1440.0 + 90.0);
  EXPECT_DOUBLE_EQ(parse_iso("2025-12-23T23:00:00Z").minutes, -60.0);
  EXPECT_EQ(format_iso(Instant(1440.0 + 90.5)), "2025-12-25T01:30:30Z");
  EXPECT_EQ(format_iso(parse_iso("2026-01-01T12:34:56Z")), "2026-01-01T12:34:56Z");
  EXPECT_THROW(parse_iso("2025-12-24 10:00"), std::invalid_argument);
  EXPECT_THROW(parse_iso("2025-12-24T10:00:00+02:00"), std::invalid_argument);
  EXPECT_THROW(parse_iso("2025-02-30T10:00:00Z"), std::invalid_argument);
}
