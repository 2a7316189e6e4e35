#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "graphex/errors.hpp"
#include "graphex/rng.hpp"

using namespace graphex;

TEST(CounterStream, SameKeySameSequence) {
  CounterStream a(42, {1, 2});
  CounterStream b(42, {1, 2});
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(CounterStream, PathsAreIndependent) {
  EXPECT_NE(derive_key(7, {1, 2}), derive_key(7, {2, 1}));
  EXPECT_NE(derive_key(7, {1}), derive_key(7, {1, 0}));
  EXPECT_NE(derive_key(7, {}), derive_key(8, {}));
}

TEST(CounterStream, UniformIsOpenUnitInterval) {
  CounterStream s(3, {});
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / 100000));
}

TEST(CounterStream, BelowCoversRange) {
  CounterStream s(5, {});
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    auto v = s.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(s.below(1), 0u);
}

TEST(CounterStream, PoissonMoments) {
  for (double mean : {0.3, 4.0, 37.5, 1e4}) {
    CounterStream s(11, {static_cast<std::uint64_t>(mean * 10)});
    const int n = 20000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double k = s.poisson(mean);
      ASSERT_EQ(k, std::floor(k));
      sum += k;
      sum2 += k * k;
    }
    double m = sum / n;
    double var = sum2 / n - m * m;
    EXPECT_NEAR(m, mean, 4.0 * std::sqrt(mean / n)) << "mean " << mean;
    EXPECT_NEAR(var / mean, 1.0, 0.06) << "mean " << mean;
  }
}

TEST(CounterStream, PoissonZeroMean) {
  CounterStream s(1, {});
  EXPECT_EQ(s.poisson(0.0), 0.0);
  EXPECT_THROW(s.poisson(-1.0), ValidationError);
}

TEST(CounterStream, NormalAndExponentialMoments) {
  CounterStream s(9, {});
  const int n = 50000;
  double sn = 0.0, sn2 = 0.0, se = 0.0;
  for (int i = 0; i < n; ++i) {
    double z = s.normal();
    sn += z;
    sn2 += z * z;
    se += s.exponential();
  }
  EXPECT_NEAR(sn / n, 0.0, 0.02);
  EXPECT_NEAR(sn2 / n, 1.0, 0.03);
  EXPECT_NEAR(se / n, 1.0, 0.02);
}
