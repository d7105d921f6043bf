#include "evc/kernels.hpp"

#include <cmath>

namespace evc::kernels {
namespace {

void spmv_scalar(std::size_t n, const std::uint64_t* row_ptr,
                 const std::uint32_t* col, const double* val, const double* x,
                 double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::uint64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      acc += val[k] * x[col[k]];
    }
    y[i] = acc;
  }
}

double l1_norm_scalar(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(v[i]);
  return acc;
}

double max_abs_scalar(const double* v, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(v[i]));
  return m;
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

void scale_scalar(double* v, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) v[i] *= s;
}

void axpy_scalar(double* y, const double* x, std::size_t n, double a) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Ops& scalar_ops() {
  static constexpr Ops ops{"scalar",         spmv_scalar,  l1_norm_scalar,
                           max_abs_scalar,   max_abs_diff_scalar,
                           scale_scalar,     axpy_scalar};
  return ops;
}

}  // namespace evc::kernels
