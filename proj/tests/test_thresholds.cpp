#include <doctest.h>

#include <cmath>

#include "bufsim/thresholds.hpp"

using namespace bufsim;

TEST_CASE("n=4 B=100 reference values") {
  const ThresholdTable table({4, 100});
  CHECK(table.scale() == doctest::Approx(41.905978).epsilon(1e-6));
  CHECK(table.ceil_threshold(1) == 42);
  CHECK(table.ceil_threshold(2) == 21);
  CHECK(table.ceil_threshold(3) == 14);
  CHECK(table.ceil_threshold(4) == 11);
  CHECK(table.max_queue() == 42);
}

TEST_CASE("n=2 B=4 reference values") {
  const ThresholdTable table({2, 4});
  CHECK(table.threshold(1) == doctest::Approx(2.362464).epsilon(1e-6));
  CHECK(table.threshold(2) == doctest::Approx(1.181232).epsilon(1e-6));
  CHECK(table.ceil_threshold(1) == 3);
  CHECK(table.ceil_threshold(2) == 2);
  CHECK(table.prefix_budget(1) == doctest::Approx(2.362464).epsilon(1e-6));
  CHECK(table.prefix_budget(2) == doctest::Approx(3.543696).epsilon(1e-6));
}

TEST_CASE("n=1 collapses to the full buffer") {
  // 1 + ln 1 = 1, so T_1 = B exactly and the only budget is B itself.
  const ThresholdTable table({1, 7});
  CHECK(table.scale() == doctest::Approx(7.0));
  CHECK(table.threshold(1) == doctest::Approx(7.0));
  CHECK(table.ceil_threshold(1) == 7);
  CHECK(table.prefix_budget(1) == doctest::Approx(7.0));
}

TEST_CASE("thresholds strictly decrease and ceilings never increase") {
  for (int n : {2, 3, 4, 7, 16, 64}) {
    for (std::int64_t b : {2, 5, 10, 100, 1000}) {
      const ThresholdTable table({n, b});
      for (int k = 2; k <= n; ++k) {
        CHECK(table.threshold(k) < table.threshold(k - 1));
        CHECK(table.ceil_threshold(k) <= table.ceil_threshold(k - 1));
        CHECK(table.ceil_threshold(k) >= 1);
      }
    }
  }
}

TEST_CASE("consecutive ceilings can collide") {
  // ceil(T_3) = ceil(1.397) = 2 = ceil(1.048) = ceil(T_4): occupancy-indexed
  // lookups must handle equal neighboring ceilings.
  const ThresholdTable table({4, 10});
  CHECK(table.ceil_threshold(1) == 5);
  CHECK(table.ceil_threshold(2) == 3);
  CHECK(table.ceil_threshold(3) == 2);
  CHECK(table.ceil_threshold(4) == 2);
}

TEST_CASE("prefix budgets stay within capacity") {
  // P_n = D * H_n and H_n <= 1 + ln n, so the full budget never exceeds B.
  for (int n : {1, 2, 3, 5, 8, 32, 128, 1024}) {
    for (std::int64_t b : {1, 2, 7, 64, 100000}) {
      const ThresholdTable table({n, b});
      for (int i = 2; i <= n && i <= 8; ++i) {
        CHECK(table.prefix_budget(i) > table.prefix_budget(i - 1));
      }
      CHECK(table.prefix_budget(n) <= static_cast<double>(b) + 1e-9);
    }
  }
}

TEST_CASE("index_for matches a direct scan of the real thresholds") {
  for (int n : {1, 2, 4, 5, 11}) {
    for (std::int64_t b : {2, 3, 10, 37, 100}) {
      const ThresholdTable table({n, b});
      for (std::int64_t occ = 0; occ <= table.max_queue() + 2; ++occ) {
        int expected = 0;
        for (int k = n; k >= 1; --k) {
          if (static_cast<double>(occ) < table.threshold(k)) {
            expected = k;
            break;
          }
        }
        CAPTURE(n);
        CAPTURE(b);
        CAPTURE(occ);
        CHECK(table.index_for(occ) == expected);
      }
    }
  }
}

TEST_CASE("integer comparisons agree with real comparisons") {
  // occ >= T_k iff occ >= U_k for integer occ: the integerization is exact.
  for (int n : {2, 3, 6, 9}) {
    for (std::int64_t b : {2, 5, 13, 100}) {
      const ThresholdTable table({n, b});
      for (int k = 1; k <= n; ++k) {
        for (std::int64_t occ = 0; occ <= b; ++occ) {
          const bool real = static_cast<double>(occ) >= table.threshold(k);
          const bool integer = occ >= table.ceil_threshold(k);
          CHECK(real == integer);
        }
      }
    }
  }
}

TEST_CASE("no precision warnings across a broad sweep") {
  for (int n = 1; n <= 64; ++n) {
    for (std::int64_t b : {1, 2, 3, 10, 100, 1000, 1000000}) {
      const ThresholdTable table({n, b});
      CHECK(table.precision_warnings().empty());
    }
  }
}
