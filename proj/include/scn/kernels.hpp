#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace scn::kernels {

inline constexpr double kInvLn2 = 1.4426950408889634074;  // 1/ln(2)

// Portable log2 family used by every rate-like computation in the library.
// Both kernel backends implement these exact operation sequences — the AVX2
// lanes mirror them op for op, fused steps included — so batched tables,
// loop tails, and element-wise recomputation are all bit-identical no matter
// which backend runs.
namespace logdetail {

// atanh-series coefficients for ln(m) = 2s * (1 + t/3 + ... + t^8/17) with
// s = (m-1)/(m+1), t = s^2, m in [sqrt(2)/2, sqrt(2)]. |s| <= 0.1716 keeps
// the truncation error a few 1e-16 relative.
inline constexpr double kC3 = 1.0 / 3.0;
inline constexpr double kC5 = 1.0 / 5.0;
inline constexpr double kC7 = 1.0 / 7.0;
inline constexpr double kC9 = 1.0 / 9.0;
inline constexpr double kC11 = 1.0 / 11.0;
inline constexpr double kC13 = 1.0 / 13.0;
inline constexpr double kC15 = 1.0 / 15.0;
inline constexpr double kC17 = 1.0 / 17.0;
inline constexpr double kSqrt2 = 1.41421356237309514547;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;  // 20 trailing zero bits
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

// Splits finite normal x > 0 into x = 2^e * m and returns ln(m) via the
// series. The exponent is extracted from the bit pattern, so inputs outside
// the normal range are not handled here; every caller feeds values >= 1 or
// a positive rate/SINR argument.
inline void log2_core(double x, double& e, double& ln_m) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  double ev = static_cast<double>(static_cast<std::int64_t>(bits >> 52)) - 1023.0;
  double m =
      std::bit_cast<double>((bits & 0x000FFFFFFFFFFFFFull) | 0x3FF0000000000000ull);
  if (m > kSqrt2) {
    m = m * 0.5;
    ev = ev + 1.0;
  }
  const double s = (m - 1.0) / (m + 1.0);
  const double t = s * s;
  double p = kC17;
  p = std::fma(p, t, kC15);
  p = std::fma(p, t, kC13);
  p = std::fma(p, t, kC11);
  p = std::fma(p, t, kC9);
  p = std::fma(p, t, kC7);
  p = std::fma(p, t, kC5);
  p = std::fma(p, t, kC3);
  p = std::fma(p, t, 1.0);
  e = ev;
  ln_m = (s + s) * p;
}

}  // namespace logdetail

// log2 of a positive finite double.
inline double log2_pos(double x) {
  double e, ln_m;
  logdetail::log2_core(x, e, ln_m);
  return std::fma(ln_m, kInvLn2, e);
}

// log2(1+x) for x >= 0; the (x-d)/u term restores what rounding 1+x lost,
// so small x keeps full relative accuracy.
inline double log2p1(double x) {
  const double u = 1.0 + x;
  const double d = u - 1.0;
  double e, ln_m;
  logdetail::log2_core(u, e, ln_m);
  const double c = (x - d) / u;
  const double t0 = std::fma(e, logdetail::kLn2Hi, ln_m);
  const double t1 = std::fma(e, logdetail::kLn2Lo, c);
  return (t0 + t1) * kInvLn2;
}

// One SINR evaluation, shared by the scalar table kernel and the element-wise
// channel API so both are bit-identical. gains is indexed [(l*N + j)*M + m];
// power holds per-subcarrier powers. A denominator of exactly zero (possible
// only with zero noise and zero interference) saturates to gamma_max.
inline double sinr_element(const double* gains, const double* power, double sigma2,
                           double gamma_max, int L, int N, int M, int l, int j, int m) {
  const std::size_t plane = static_cast<std::size_t>(N) * static_cast<std::size_t>(M);
  const std::size_t col = static_cast<std::size_t>(j) * static_cast<std::size_t>(M) +
                          static_cast<std::size_t>(m);
  const double own = power[l] * gains[static_cast<std::size_t>(l) * plane + col];
  double den = sigma2;
  for (int k = 0; k < L; ++k) {
    if (k == l) continue;
    den += power[k] * gains[static_cast<std::size_t>(k) * plane + col];
  }
  if (den == 0.0) return gamma_max;
  return own / den;
}

// Batched table kernels. Tables are row-major with the user index innermost:
// gamma[(l*N+j)*M+m], rates[l*M+m]. The scalar implementation is the
// reference; the AVX2 one must agree bit-for-bit on every table (shared
// accumulation order, shared log2 sequence above).
struct Ops {
  const char* name;
  void (*sinr_table)(const double* gains, const double* power, double sigma2,
                     double gamma_max, int L, int N, int M, double* gamma);
  // rates[l*M+m] = (1/N) * sum_j w * log2(1 + gamma[l][j][m])
  void (*rate_table)(const double* gamma, double w, int L, int N, int M, double* rates);
  // promo[l*M+m] = (1/N) * sum_j w * alpha*zeta1 / log2(zeta2 + alpha*gamma[l][j][m])
  void (*promotion_table)(const double* gamma, double w, double alpha, double zeta1,
                          double zeta2, int L, int N, int M, double* promo);
  // rssi[l*M+m] = (1/N) * sum_j power[l] * gains[l][j][m]
  void (*mean_power_table)(const double* gains, const double* power, int L, int N, int M,
                           double* rssi);
};

const Ops& scalar_ops();

// True when the binary carries AVX2 kernels and the CPU can run them.
bool avx2_available();
const Ops& avx2_ops();  // call only if avx2_available()

// Backend picked once at startup: AVX2 when available, scalar otherwise.
// Environment override: SCN_KERNELS=scalar|avx2|auto.
const Ops& active_ops();

}  // namespace scn::kernels
