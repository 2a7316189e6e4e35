#include <gtest/gtest.h>

#include "property_cases.hpp"

using namespace graphex;

TEST(Properties, RandomizedSuite) {
  auto report = test_support::run_property_suite(20240611, 200);
  EXPECT_GE(report.cases, 500);
  EXPECT_EQ(report.failures, 0);
  for (const auto& m : report.messages) ADD_FAILURE() << m;
}

TEST(Properties, SecondSeed) {
  auto report = test_support::run_property_suite(7, 60);
  EXPECT_EQ(report.failures, 0);
  for (const auto& m : report.messages) ADD_FAILURE() << m;
}
