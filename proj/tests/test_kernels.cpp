#include <doctest.h>

#include <cmath>
#include <vector>

#include "scn/kernels.hpp"
#include "scn/rng.hpp"

using namespace scn;

namespace {

// Random but reproducible tensors shaped like real workloads, including
// ragged user counts to exercise the SIMD tail.
struct Workload {
  int L, N, M;
  std::vector<double> gains;
  std::vector<double> power;
  std::vector<double> sinr;

  Workload(int l, int n, int m, std::uint64_t seed) : L(l), N(n), M(m) {
    RandomStream rs(seed);
    gains.resize(static_cast<std::size_t>(L) * N * M);
    for (double& g : gains) g = rs.exponential() * std::exp(rs.uniform(-14.0, 3.0));
    power.resize(static_cast<std::size_t>(L));
    for (double& p : power) p = rs.uniform(0.05, 1.0);
    sinr.resize(gains.size());
    kernels::scalar_ops().sinr_table(gains.data(), power.data(), 1e-12, 1e12, L, N, M,
                                     sinr.data());
  }
};

}  // namespace

TEST_CASE("scalar sinr_table matches hand-computed cases") {
  // 2 BSs, 1 subcarrier, 2 users; equal powers.
  const std::vector<double> gains = {0.5, 1.0,   // BS0
                                     0.25, 0.0};  // BS1
  const std::vector<double> power = {1.0, 1.0};
  std::vector<double> sinr(4);

  // Noise 0.25: gamma(0,0,m0) = 0.5 / (0.25 + 0.25) = 1.0
  kernels::scalar_ops().sinr_table(gains.data(), power.data(), 0.25, 1e12, 2, 1, 2,
                                   sinr.data());
  CHECK(sinr[0] == doctest::Approx(1.0));
  // Zero gain stays zero regardless of interference.
  CHECK(sinr[3] == 0.0);

  // Zero noise, zero interference: saturates.
  kernels::scalar_ops().sinr_table(gains.data(), power.data(), 0.0, 1e12, 2, 1, 2,
                                   sinr.data());
  CHECK(sinr[1] == 1e12);          // user 1 at BS0 has no interference (BS1 gain 0)
  CHECK(sinr[0] == doctest::Approx(0.5 / 0.25));
}

TEST_CASE("scalar rate_table is the mean of per-subcarrier log2(1+g)") {
  const std::vector<double> sinr = {1.0, 3.0,   // (l0,j0)
                                    0.0, 15.0};  // (l0,j1)
  std::vector<double> rates(2);
  kernels::scalar_ops().rate_table(sinr.data(), 2.0, 1, 2, 2, rates.data());
  // user 0: (2*log2(2) + 2*log2(1)) / 2 = 1
  CHECK(rates[0] == doctest::Approx(1.0));
  // user 1: (2*log2(4) + 2*log2(16)) / 2 = (4 + 8) / 2 = 6
  CHECK(rates[1] == doctest::Approx(6.0));
}

TEST_CASE("scalar promotion_table matches the closed form") {
  // One BS, one subcarrier, one user: gamma = 1, alpha = 1, zeta = (0.1, 3).
  const std::vector<double> sinr = {1.0};
  std::vector<double> promo(1);
  kernels::scalar_ops().promotion_table(sinr.data(), 1.0, 1.0, 0.1, 3.0, 1, 1, 1,
                                        promo.data());
  CHECK(promo[0] == doctest::Approx(0.1 / 2.0));  // log2(4) = 2

  // Monotone in alpha on a fixed gamma: the promotion grows with alpha.
  std::vector<double> hi(1);
  kernels::scalar_ops().promotion_table(sinr.data(), 1.0, 100.0, 0.1, 3.0, 1, 1, 1,
                                        hi.data());
  CHECK(hi[0] > promo[0]);
}

TEST_CASE("scalar mean_power_table averages received power") {
  const std::vector<double> gains = {1.0, 2.0, 3.0, 4.0};  // L=1, N=2, M=2
  const std::vector<double> power = {0.5};
  std::vector<double> rssi(2);
  kernels::scalar_ops().mean_power_table(gains.data(), power.data(), 1, 2, 2,
                                         rssi.data());
  CHECK(rssi[0] == doctest::Approx(0.5 * (1.0 + 3.0) / 2.0));
  CHECK(rssi[1] == doctest::Approx(0.5 * (2.0 + 4.0) / 2.0));
}

TEST_CASE("avx2 kernels agree with scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available; skipping");
    return;
  }
  const auto& sc = kernels::scalar_ops();
  const auto& vx = kernels::avx2_ops();
  REQUIRE(std::string(vx.name) == "avx2");

  for (const int M : {1, 3, 4, 5, 7, 8, 17, 80, 86}) {
    Workload w(5, 8, M, 0xC0FFEEull + static_cast<unsigned>(M));

    // sinr and mean power must match bit for bit: same operation order.
    std::vector<double> sinr_s(w.gains.size()), sinr_v(w.gains.size());
    sc.sinr_table(w.gains.data(), w.power.data(), 1e-12, 1e12, w.L, w.N, w.M,
                  sinr_s.data());
    vx.sinr_table(w.gains.data(), w.power.data(), 1e-12, 1e12, w.L, w.N, w.M,
                  sinr_v.data());
    CHECK(sinr_s == sinr_v);

    std::vector<double> rssi_s(static_cast<std::size_t>(w.L) * w.M);
    std::vector<double> rssi_v(rssi_s.size());
    sc.mean_power_table(w.gains.data(), w.power.data(), w.L, w.N, w.M, rssi_s.data());
    vx.mean_power_table(w.gains.data(), w.power.data(), w.L, w.N, w.M, rssi_v.data());
    CHECK(rssi_s == rssi_v);

    // Log-based tables share one log2 sequence, so these are exact too.
    std::vector<double> rate_s(rssi_s.size()), rate_v(rssi_s.size());
    sc.rate_table(w.sinr.data(), 1.0, w.L, w.N, w.M, rate_s.data());
    vx.rate_table(w.sinr.data(), 1.0, w.L, w.N, w.M, rate_v.data());
    CHECK(rate_s == rate_v);

    for (const double alpha : {100.0, 30.0, 1.0}) {
      std::vector<double> promo_s(rssi_s.size()), promo_v(rssi_s.size());
      sc.promotion_table(w.sinr.data(), 1.0, alpha, 0.1, 3.0, w.L, w.N, w.M,
                         promo_s.data());
      vx.promotion_table(w.sinr.data(), 1.0, alpha, 0.1, 3.0, w.L, w.N, w.M,
                         promo_v.data());
      CHECK(promo_s == promo_v);
    }
  }
}

TEST_CASE("avx2 saturation and degenerate inputs match scalar") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 not available; skipping");
    return;
  }
  // Zero noise, lone BS: every subcarrier saturates in both backends.
  const int L = 1, N = 2, M = 6;
  std::vector<double> gains(static_cast<std::size_t>(L) * N * M, 0.5);
  const std::vector<double> power = {1.0};
  std::vector<double> s(gains.size()), v(gains.size());
  kernels::scalar_ops().sinr_table(gains.data(), power.data(), 0.0, 1e12, L, N, M,
                                   s.data());
  kernels::avx2_ops().sinr_table(gains.data(), power.data(), 0.0, 1e12, L, N, M,
                                 v.data());
  CHECK(s == v);
  CHECK(s[0] == 1e12);

  // Extreme SINR magnitudes through the log paths.
  std::vector<double> wild = {1e-18, 1e-9, 1e-3, 0.0, 1.0, 1e3, 1e9, 1e12,
                              2.5e-2, 7.0, 42.0, 1e6, 3.3e-7, 0.99, 1.01, 5e11};
  std::vector<double> rs(8), rv(8);
  kernels::scalar_ops().rate_table(wild.data(), 1.0, 1, 2, 8, rs.data());
  kernels::avx2_ops().rate_table(wild.data(), 1.0, 1, 2, 8, rv.data());
  CHECK(rs == rv);
}

TEST_CASE("log2 helpers track libm across the working range") {
  // Exact at powers of two: the mantissa path is a no-op there.
  for (int k = -40; k <= 40; ++k) {
    CHECK(kernels::log2_pos(std::ldexp(1.0, k)) == static_cast<double>(k));
  }
  CHECK(kernels::log2p1(0.0) == 0.0);

  // Log-spaced sweep; libm agreement to a few ulp everywhere.
  RandomStream rs(0xB10C5EEDull);
  for (int i = 0; i < 4000; ++i) {
    const double x = std::exp(rs.uniform(-41.0, 28.0));  // ~[1.5e-18, 1.5e12]
    const double l2 = kernels::log2_pos(x);
    const double ref = std::log2(x);
    CHECK(std::abs(l2 - ref) <= 1e-14 * std::max(std::abs(ref), 1.0));
    const double lp = kernels::log2p1(x);
    const double refp = std::log1p(x) * kernels::kInvLn2;
    CHECK(std::abs(lp - refp) <= 1e-14 * std::max(refp, 1.0));
  }
}

TEST_CASE("active_ops honors the SCN_KERNELS override") {
  // The dispatcher caches its choice, so only sane values are checked here.
  const auto& ops = kernels::active_ops();
  const std::string name = ops.name;
  CHECK((name == "scalar" || name == "avx2"));
  if (!kernels::avx2_available()) CHECK(name == "scalar");
}
