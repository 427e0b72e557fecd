// AVX2 lane. Vector lanes map to independent rows (column-major data), so
// each row's accumulation order matches the scalar reference exactly; mul+add
// only, no FMA, keeping the two lanes bit-identical. Compiled with -mavx2 on
// x86-64 only; see CMakeLists.

#include "gssdc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace gssdc::kernels::detail {

namespace {

void row_sumsq_avx2(const double* m, std::size_t rows, std::size_t cols, double* out) {
  const std::size_t r4 = rows - rows % 4;
  for (std::size_t i = 0; i < r4; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < cols; ++j) {
      const __m256d v = _mm256_loadu_pd(m + i + j * rows);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (std::size_t i = r4; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = m[i + j * rows];
      s += v * v;
    }
    out[i] = s;
  }
}

void scale_rows_avx2(double* m, std::size_t rows, std::size_t cols, const double* factors) {
  const std::size_t r4 = rows - rows % 4;
  for (std::size_t j = 0; j < cols; ++j) {
    double* col = m + j * rows;
    for (std::size_t i = 0; i < r4; i += 4) {
      const __m256d f = _mm256_loadu_pd(factors + i);
      const __m256d v = _mm256_loadu_pd(col + i);
      _mm256_storeu_pd(col + i, _mm256_mul_pd(v, f));
    }
    for (std::size_t i = r4; i < rows; ++i) col[i] *= factors[i];
  }
}

void add_scaled_avx2(double* y, const double* x, double alpha, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(a, xv)));
  }
  for (std::size_t i = n4; i < n; ++i) y[i] += alpha * x[i];
}

inline double reduce_0123(__m256d acc) {
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double sumsq_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double total = reduce_0123(acc);
  for (std::size_t i = n4; i < n; ++i) total += x[i] * x[i];
  return total;
}

double sumsq_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = reduce_0123(acc);
  for (std::size_t i = n4; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{row_sumsq_avx2, scale_rows_avx2, add_scaled_avx2,
                             sumsq_avx2, sumsq_diff_avx2};
  return t;
}

}  // namespace gssdc::kernels::detail

#endif  // x86-64
