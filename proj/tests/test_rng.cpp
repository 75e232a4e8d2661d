#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "drk/rng.hpp"

using drk::RngStream;

TEST_CASE("streams are deterministic per (seed, tag)") {
  RngStream a(42, "rows");
  RngStream b(42, "rows");
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("differently tagged streams differ") {
  RngStream a(42, "rows");
  RngStream b(42, "workers");
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("uniform01 stays in [0,1) and has a sane mean") {
  RngStream r(7, "u");
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double u = r.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("below() covers the full range without bias") {
  RngStream r(11, "b");
  std::vector<int> counts(10, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[r.below(10)];
  for (int c : counts) {
    CHECK(c > 0.9 * n / 10);
    CHECK(c < 1.1 * n / 10);
  }
  CHECK_THROWS(r.below(0));
}

TEST_CASE("gaussian moments") {
  RngStream r(3, "g");
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double g = r.gaussian();
    sum += g;
    sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("derived streams are independent and reproducible") {
  RngStream base(5, "noise");
  RngStream c1 = base.derive(3, 17);
  RngStream c2 = base.derive(3, 17);
  RngStream c3 = base.derive(3, 18);
  CHECK(c1.next_u64() == c2.next_u64());
  CHECK(c1.next_u64() != c3.next_u64());
  // deriving does not consume state from the base stream
  RngStream fresh(5, "noise");
  base.derive(1, 1);
  CHECK(base.next_u64() == fresh.next_u64());
}
