#include <doctest.h>

#include <cmath>
#include <vector>

#include "scn/rng.hpp"

using namespace scn;

TEST_CASE("derive_seed is order-free and collision-resistant on small keys") {
  CHECK(derive_seed(42, 1, 2) == derive_seed(42, 1, 2));
  CHECK(derive_seed(42, 1, 2) != derive_seed(42, 2, 1));
  CHECK(derive_seed(42, 1, 2) != derive_seed(43, 1, 2));
  CHECK(derive_seed(0, 0, 0) != derive_seed(0, 0, 1));
  CHECK(derive_seed(0, 0, 0) != derive_seed(0, 1, 0));

  // No collisions over a small grid of (a, b).
  std::vector<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::uint64_t b = 0; b < 64; ++b) seen.push_back(derive_seed(7, a, b));
  }
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("uniform01 stays in [0,1) and reproduces exactly") {
  RandomStream a(123), b(123);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform01());
  }
}

TEST_CASE("exponential draws have unit mean") {
  RandomStream s(2024);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = s.exponential();
    CHECK(x >= 0.0);
    sum += x;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("exponential is finite even at the extreme uniform draw") {
  // -log1p(-u) with u < 1 is always finite.
  const double worst = -std::log1p(-(1.0 - 0x1.0p-53));
  CHECK(std::isfinite(worst));
}
