#include "scn/kernels.hpp"

namespace scn::kernels {

namespace {

void sinr_table_scalar(const double* gains, const double* power, double sigma2,
                       double gamma_max, int L, int N, int M, double* gamma) {
  const std::size_t plane = static_cast<std::size_t>(N) * static_cast<std::size_t>(M);
  for (int l = 0; l < L; ++l) {
    for (int j = 0; j < N; ++j) {
      double* out = gamma + static_cast<std::size_t>(l) * plane +
                    static_cast<std::size_t>(j) * static_cast<std::size_t>(M);
      for (int m = 0; m < M; ++m) {
        out[m] = sinr_element(gains, power, sigma2, gamma_max, L, N, M, l, j, m);
      }
    }
  }
}

void rate_table_scalar(const double* gamma, double w, int L, int N, int M,
                       double* rates) {
  const std::size_t plane = static_cast<std::size_t>(N) * static_cast<std::size_t>(M);
  for (int l = 0; l < L; ++l) {
    for (int m = 0; m < M; ++m) {
      const double* col = gamma + static_cast<std::size_t>(l) * plane + m;
      double acc = 0.0;
      for (int j = 0; j < N; ++j) {
        acc += w * log2p1(col[static_cast<std::size_t>(j) * static_cast<std::size_t>(M)]);
      }
      rates[static_cast<std::size_t>(l) * static_cast<std::size_t>(M) + m] = acc / N;
    }
  }
}

void promotion_table_scalar(const double* gamma, double w, double alpha, double zeta1,
                            double zeta2, int L, int N, int M, double* promo) {
  const std::size_t plane = static_cast<std::size_t>(N) * static_cast<std::size_t>(M);
  const double num = alpha * zeta1;
  for (int l = 0; l < L; ++l) {
    for (int m = 0; m < M; ++m) {
      const double* col = gamma + static_cast<std::size_t>(l) * plane + m;
      double acc = 0.0;
      for (int j = 0; j < N; ++j) {
        const double g = col[static_cast<std::size_t>(j) * static_cast<std::size_t>(M)];
        acc += w * (num / log2_pos(zeta2 + alpha * g));
      }
      promo[static_cast<std::size_t>(l) * static_cast<std::size_t>(M) + m] = acc / N;
    }
  }
}

void mean_power_table_scalar(const double* gains, const double* power, int L, int N,
                             int M, double* rssi) {
  const std::size_t plane = static_cast<std::size_t>(N) * static_cast<std::size_t>(M);
  for (int l = 0; l < L; ++l) {
    const double p = power[l];
    for (int m = 0; m < M; ++m) {
      const double* col = gains + static_cast<std::size_t>(l) * plane + m;
      double acc = 0.0;
      for (int j = 0; j < N; ++j) {
        acc += p * col[static_cast<std::size_t>(j) * static_cast<std::size_t>(M)];
      }
      rssi[static_cast<std::size_t>(l) * static_cast<std::size_t>(M) + m] = acc / N;
    }
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {"scalar", sinr_table_scalar, rate_table_scalar,
                          promotion_table_scalar, mean_power_table_scalar};
  return ops;
}

}  // namespace scn::kernels
