#include "gssdc/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#define GSSDC_HAVE_AVX2_LANE 1
#else
#define GSSDC_HAVE_AVX2_LANE 0
#endif

namespace gssdc::kernels {

namespace detail {
const KernelTable& scalar_table();
#if GSSDC_HAVE_AVX2_LANE
const KernelTable& avx2_table();
#endif

const KernelTable& table(Lane lane) {
  if (lane == Lane::scalar) return scalar_table();
#if GSSDC_HAVE_AVX2_LANE
  if (avx2_available()) return avx2_table();
#endif
  throw std::invalid_argument("avx2 kernel lane not available on this machine");
}
}  // namespace detail

bool avx2_available() {
#if GSSDC_HAVE_AVX2_LANE
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

Lane pick_initial_lane() {
  if (const char* env = std::getenv("GSSDC_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Lane::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (avx2_available()) return Lane::avx2;
      std::fprintf(stderr, "gssdc: GSSDC_KERNELS=avx2 but cpu lacks avx2; using scalar\n");
      return Lane::scalar;
    }
    if (*env) std::fprintf(stderr, "gssdc: unknown GSSDC_KERNELS value '%s' ignored\n", env);
  }
  return avx2_available() ? Lane::avx2 : Lane::scalar;
}

Lane g_lane = pick_initial_lane();

}  // namespace

Lane active_lane() { return g_lane; }

void set_lane(Lane lane) {
  detail::table(lane);  // validates availability
  g_lane = lane;
}

void row_sumsq(const double* m, std::size_t rows, std::size_t cols, double* out) {
  detail::table(g_lane).row_sumsq(m, rows, cols, out);
}

void scale_rows(double* m, std::size_t rows, std::size_t cols, const double* factors) {
  detail::table(g_lane).scale_rows(m, rows, cols, factors);
}

void add_scaled(double* y, const double* x, double alpha, std::size_t n) {
  detail::table(g_lane).add_scaled(y, x, alpha, n);
}

double sumsq(const double* x, std::size_t n) { return detail::table(g_lane).sumsq(x, n); }

double sumsq_diff(const double* a, const double* b, std::size_t n) {
  return detail::table(g_lane).sumsq_diff(a, b, n);
}

}  // namespace gssdc::kernels
