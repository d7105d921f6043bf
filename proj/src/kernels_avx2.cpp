// AVX2 kernel variants. This translation unit is compiled with
// -mavx2 -mfma; callers must check avx2_supported() before using the table.

#include "evc/kernels.hpp"

#if defined(EVC_BUILD_AVX2)

#include <immintrin.h>

#include <cmath>

namespace evc::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline __m256d vabs(__m256d v) {
  const __m256d mask = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(mask, v);
}

void spmv_avx2(std::size_t n, const std::uint64_t* row_ptr,
               const std::uint32_t* col, const double* val, const double* x,
               double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t k = row_ptr[i];
    const std::uint64_t end = row_ptr[i + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 4 <= end; k += 4) {
      __m128i idx =
          _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + k));
      __m256d xs = _mm256_i32gather_pd(x, idx, 8);
      __m256d ws = _mm256_loadu_pd(val + k);
      acc = _mm256_fmadd_pd(ws, xs, acc);
    }
    double tail = 0.0;
    for (; k < end; ++k) tail += val[k] * x[col[k]];
    y[i] = hsum(acc) + tail;
  }
}

double l1_norm_avx2(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, vabs(_mm256_loadu_pd(v + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(v[i]);
  return s;
}

double max_abs_avx2(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, vabs(_mm256_loadu_pd(v + i)));
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::fabs(v[i]));
  return m;
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, vabs(d));
  }
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

void scale_avx2(double* v, std::size_t n, double s) {
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(v + i, _mm256_mul_pd(_mm256_loadu_pd(v + i), sv));
  for (; i < n; ++i) v[i] *= s;
}

void axpy_avx2(double* y, const double* x, std::size_t n, double a) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r =
        _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Ops& avx2_ops() {
  static constexpr Ops ops{"avx2",        spmv_avx2,  l1_norm_avx2,
                           max_abs_avx2,  max_abs_diff_avx2,
                           scale_avx2,    axpy_avx2};
  return ops;
}

}  // namespace evc::kernels

#else

namespace evc::kernels {
// Fallback so the symbol exists on targets without the AVX2 build.
const Ops& avx2_ops() { return scalar_ops(); }
}  // namespace evc::kernels

#endif
