#include <gtest/gtest.h>

#include "goodfun/calibration.hpp"

using namespace goodfun;

TEST(Calibration, FreshRunWithinFactorTwoOfCommitted) {
  const Constants committed;
  const auto report = calibrate(committed);
  const auto fresh = to_map(report.constants), old = to_map(committed);
  for (const auto& [key, v] : old) {
    EXPECT_GE(fresh.at(key), v / 2) << key;
    EXPECT_LE(fresh.at(key), v * 2) << key;
  }
  EXPECT_EQ(report.sweeps.size(), 6u);
  for (const auto& s : report.sweeps) EXPECT_EQ(s.skipped, 0) << s.key;
}
