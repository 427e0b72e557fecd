// Scalar reference lane. The accumulation orders here define the semantics
// the AVX2 lane must reproduce bit-for-bit.

#include "gssdc/kernels.hpp"

namespace gssdc::kernels::detail {

namespace {

void row_sumsq_scalar(const double* m, std::size_t rows, std::size_t cols, double* out) {
  for (std::size_t i = 0; i < rows; ++i) out[i] = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    const double* col = m + j * rows;
    for (std::size_t i = 0; i < rows; ++i) out[i] += col[i] * col[i];
  }
}

void scale_rows_scalar(double* m, std::size_t rows, std::size_t cols, const double* factors) {
  for (std::size_t j = 0; j < cols; ++j) {
    double* col = m + j * rows;
    for (std::size_t i = 0; i < rows; ++i) col[i] *= factors[i];
  }
}

void add_scaled_scalar(double* y, const double* x, double alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// Four interleaved partial sums, combined as (s0+s1)+(s2+s3); the tail is
// folded in sequentially afterwards. Matches the AVX2 register layout.
double sumsq_scalar(const double* x, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    s0 += x[i] * x[i];
    s1 += x[i + 1] * x[i + 1];
    s2 += x[i + 2] * x[i + 2];
    s3 += x[i + 3] * x[i + 3];
  }
  double total = (s0 + s1) + (s2 + s3);
  for (std::size_t i = n4; i < n; ++i) total += x[i] * x[i];
  return total;
}

double sumsq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const double d0 = a[i] - b[i];
    const double d1 = a[i + 1] - b[i + 1];
    const double d2 = a[i + 2] - b[i + 2];
    const double d3 = a[i + 3] - b[i + 3];
    s0 += d0 * d0;
    s1 += d1 * d1;
    s2 += d2 * d2;
    s3 += d3 * d3;
  }
  double total = (s0 + s1) + (s2 + s3);
  for (std::size_t i = n4; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{row_sumsq_scalar, scale_rows_scalar, add_scaled_scalar,
                             sumsq_scalar, sumsq_diff_scalar};
  return t;
}

}  // namespace gssdc::kernels::detail
