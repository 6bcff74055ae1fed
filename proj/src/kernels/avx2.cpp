#include "scn/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <bit>
#include <cstdint>

namespace scn::kernels {

namespace {

using logdetail::kLn2Hi;
using logdetail::kLn2Lo;

// Vector mirror of logdetail::log2_core: identical operation sequence lane
// by lane (bit extraction, sqrt(2) fold, atanh series with fused steps), so
// lanes, loop tails, and the scalar backend agree bit-for-bit.
inline void log2_core(__m256d x, __m256d& e, __m256d& ln_m) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000ll);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);  // 2^52

  __m256i bits = _mm256_castpd_si256(x);
  __m256i be = _mm256_srli_epi64(bits, 52);
  __m256d ev = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(be, magic)),
                             _mm256_castsi256_pd(magic));
  ev = _mm256_sub_pd(ev, _mm256_set1_pd(1023.0));
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  __m256d gt = _mm256_cmp_pd(m, _mm256_set1_pd(logdetail::kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), gt);
  ev = _mm256_add_pd(ev, _mm256_and_pd(gt, one));

  __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  __m256d t = _mm256_mul_pd(s, s);
  __m256d p = _mm256_set1_pd(logdetail::kC17);
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(logdetail::kC15));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(logdetail::kC13));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(logdetail::kC11));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(logdetail::kC9));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(logdetail::kC7));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(logdetail::kC5));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(logdetail::kC3));
  p = _mm256_fmadd_pd(p, t, one);

  e = ev;
  ln_m = _mm256_mul_pd(_mm256_add_pd(s, s), p);
}

inline __m256d log2_pd(__m256d x) {
  __m256d e, ln_m;
  log2_core(x, e, ln_m);
  return _mm256_fmadd_pd(ln_m, _mm256_set1_pd(kInvLn2), e);
}

inline __m256d log2p1_pd(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d u = _mm256_add_pd(one, x);
  __m256d d = _mm256_sub_pd(u, one);
  __m256d e, ln_m;
  log2_core(u, e, ln_m);
  __m256d c = _mm256_div_pd(_mm256_sub_pd(x, d), u);
  __m256d t0 = _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Hi), ln_m);
  __m256d t1 = _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Lo), c);
  return _mm256_mul_pd(_mm256_add_pd(t0, t1), _mm256_set1_pd(kInvLn2));
}

void sinr_table_avx2(const double* gains, const double* power, double sigma2,
                     double gamma_max, int L, int N, int M, double* gamma) {
  const std::size_t plane = static_cast<std::size_t>(N) * static_cast<std::size_t>(M);
  const __m256d sig = _mm256_set1_pd(sigma2);
  const __m256d gmax = _mm256_set1_pd(gamma_max);
  const __m256d zero = _mm256_setzero_pd();
  for (int l = 0; l < L; ++l) {
    const __m256d pl = _mm256_set1_pd(power[l]);
    for (int j = 0; j < N; ++j) {
      const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(M);
      const double* hl = gains + static_cast<std::size_t>(l) * plane + row;
      double* out = gamma + static_cast<std::size_t>(l) * plane + row;
      int m = 0;
      for (; m + 4 <= M; m += 4) {
        __m256d own = _mm256_mul_pd(pl, _mm256_loadu_pd(hl + m));
        __m256d den = sig;
        for (int k = 0; k < L; ++k) {
          if (k == l) continue;
          const double* hk = gains + static_cast<std::size_t>(k) * plane + row;
          den = _mm256_add_pd(
              den, _mm256_mul_pd(_mm256_set1_pd(power[k]), _mm256_loadu_pd(hk + m)));
        }
        __m256d g = _mm256_div_pd(own, den);
        __m256d degenerate = _mm256_cmp_pd(den, zero, _CMP_EQ_OQ);
        _mm256_storeu_pd(out + m, _mm256_blendv_pd(g, gmax, degenerate));
      }
      for (; m < M; ++m) {
        out[m] = sinr_element(gains, power, sigma2, gamma_max, L, N, M, l, j, m);
      }
    }
  }
}

void rate_table_avx2(const double* gamma, double w, int L, int N, int M,
                     double* rates) {
  const std::size_t plane = static_cast<std::size_t>(N) * static_cast<std::size_t>(M);
  const __m256d wv = _mm256_set1_pd(w);
  const __m256d nv = _mm256_set1_pd(static_cast<double>(N));
  for (int l = 0; l < L; ++l) {
    const double* base = gamma + static_cast<std::size_t>(l) * plane;
    double* out = rates + static_cast<std::size_t>(l) * static_cast<std::size_t>(M);
    int m = 0;
    for (; m + 4 <= M; m += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (int j = 0; j < N; ++j) {
        __m256d g = _mm256_loadu_pd(base + static_cast<std::size_t>(j) * M + m);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(wv, log2p1_pd(g)));
      }
      _mm256_storeu_pd(out + m, _mm256_div_pd(acc, nv));
    }
    for (; m < M; ++m) {
      double acc = 0.0;
      for (int j = 0; j < N; ++j) {
        acc += w * log2p1(base[static_cast<std::size_t>(j) * M + m]);
      }
      out[m] = acc / N;
    }
  }
}

void promotion_table_avx2(const double* gamma, double w, double alpha, double zeta1,
                          double zeta2, int L, int N, int M, double* promo) {
  const std::size_t plane = static_cast<std::size_t>(N) * static_cast<std::size_t>(M);
  const double num = alpha * zeta1;
  const __m256d wv = _mm256_set1_pd(w);
  const __m256d numv = _mm256_set1_pd(num);
  const __m256d av = _mm256_set1_pd(alpha);
  const __m256d z2v = _mm256_set1_pd(zeta2);
  const __m256d nv = _mm256_set1_pd(static_cast<double>(N));
  for (int l = 0; l < L; ++l) {
    const double* base = gamma + static_cast<std::size_t>(l) * plane;
    double* out = promo + static_cast<std::size_t>(l) * static_cast<std::size_t>(M);
    int m = 0;
    for (; m + 4 <= M; m += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (int j = 0; j < N; ++j) {
        __m256d g = _mm256_loadu_pd(base + static_cast<std::size_t>(j) * M + m);
        __m256d den = log2_pd(_mm256_add_pd(z2v, _mm256_mul_pd(av, g)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(wv, _mm256_div_pd(numv, den)));
      }
      _mm256_storeu_pd(out + m, _mm256_div_pd(acc, nv));
    }
    for (; m < M; ++m) {
      double acc = 0.0;
      for (int j = 0; j < N; ++j) {
        const double g = base[static_cast<std::size_t>(j) * M + m];
        acc += w * (num / log2_pos(zeta2 + alpha * g));
      }
      out[m] = acc / N;
    }
  }
}

void mean_power_table_avx2(const double* gains, const double* power, int L, int N,
                           int M, double* rssi) {
  const std::size_t plane = static_cast<std::size_t>(N) * static_cast<std::size_t>(M);
  for (int l = 0; l < L; ++l) {
    const double p = power[l];
    const __m256d pv = _mm256_set1_pd(p);
    const __m256d nv = _mm256_set1_pd(static_cast<double>(N));
    const double* base = gains + static_cast<std::size_t>(l) * plane;
    double* out = rssi + static_cast<std::size_t>(l) * static_cast<std::size_t>(M);
    int m = 0;
    for (; m + 4 <= M; m += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (int j = 0; j < N; ++j) {
        acc = _mm256_add_pd(
            acc, _mm256_mul_pd(pv, _mm256_loadu_pd(base + static_cast<std::size_t>(j) * M + m)));
      }
      _mm256_storeu_pd(out + m, _mm256_div_pd(acc, nv));
    }
    for (; m < M; ++m) {
      double acc = 0.0;
      for (int j = 0; j < N; ++j) {
        acc += p * base[static_cast<std::size_t>(j) * M + m];
      }
      out[m] = acc / N;
    }
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {"avx2", sinr_table_avx2, rate_table_avx2,
                          promotion_table_avx2, mean_power_table_avx2};
  return ops;
}

bool avx2_compiled() { return true; }

}  // namespace scn::kernels

#else  // no AVX2 in this build: keep the symbols, fall back to scalar

namespace scn::kernels {

const Ops& avx2_ops() { return scalar_ops(); }

bool avx2_compiled() { return false; }

}  // namespace scn::kernels

#endif
