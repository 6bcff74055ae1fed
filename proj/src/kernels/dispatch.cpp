#include "scn/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace scn::kernels {

bool avx2_compiled();  // defined in avx2.cpp

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return avx2_compiled() && __builtin_cpu_supports("avx2") &&
         __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Ops& select_ops() {
  const char* env = std::getenv("SCN_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_ops();
  if (env != nullptr && std::strcmp(env, "avx2") == 0) {
    if (avx2_available()) return avx2_ops();
    std::fprintf(stderr, "scn: SCN_KERNELS=avx2 requested but unavailable, using scalar\n");
    return scalar_ops();
  }
  if (env != nullptr && std::strcmp(env, "auto") != 0 && env[0] != '\0') {
    std::fprintf(stderr, "scn: unknown SCN_KERNELS=%s, using auto\n", env);
  }
  return avx2_available() ? avx2_ops() : scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops& ops = select_ops();
  return ops;
}

}  // namespace scn::kernels
