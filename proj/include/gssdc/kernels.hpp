#pragma once

#include <cstddef>

namespace gssdc::kernels {

// Row-wise arithmetic used inside the solver loop. Two lanes: a scalar
// reference and an AVX2 variant, chosen once at startup (AVX2 when the CPU
// supports it, overridable with GSSDC_KERNELS=scalar|avx2 or set_lane()).
//
// Both lanes produce bit-identical results: per-row accumulation walks the
// columns in the same order in each lane (vector lanes map to independent
// rows), contiguous reductions use four interleaved partial sums combined as
// (s0+s1)+(s2+s3) in both, and neither lane uses FMA.
enum class Lane { scalar, avx2 };

bool avx2_available();
Lane active_lane();
void set_lane(Lane lane);  // throws std::invalid_argument if unsupported

// Matrices are column-major with leading dimension == rows.
void row_sumsq(const double* m, std::size_t rows, std::size_t cols, double* out);
void scale_rows(double* m, std::size_t rows, std::size_t cols, const double* factors);

// Contiguous buffers.
void add_scaled(double* y, const double* x, double alpha, std::size_t n);  // y += alpha*x
double sumsq(const double* x, std::size_t n);
double sumsq_diff(const double* a, const double* b, std::size_t n);

namespace detail {

struct KernelTable {
  void (*row_sumsq)(const double*, std::size_t, std::size_t, double*);
  void (*scale_rows)(double*, std::size_t, std::size_t, const double*);
  void (*add_scaled)(double*, const double*, double, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  double (*sumsq_diff)(const double*, const double*, std::size_t);
};

// Per-lane tables, exposed so the equivalence tests can drive both lanes
// explicitly. Throws if the lane is not available on this machine.
const KernelTable& table(Lane lane);

}  // namespace detail

}  // namespace gssdc::kernels
