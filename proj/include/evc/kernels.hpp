#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Low-level array kernels behind the solvers. Every kernel exists as a
// scalar reference implementation and, on x86-64, an AVX2 variant; the
// active table is picked once at runtime from CPU capabilities and can be
// forced for equivalence testing.
namespace evc::kernels {

// y[i] = sum of val[k] * x[col[k]] for k in [row_ptr[i], row_ptr[i+1])
using SpmvFn = void (*)(std::size_t n, const std::uint64_t* row_ptr,
                        const std::uint32_t* col, const double* val,
                        const double* x, double* y);
using ReduceFn = double (*)(const double* v, std::size_t n);
using Reduce2Fn = double (*)(const double* a, const double* b, std::size_t n);
using ScaleFn = void (*)(double* v, std::size_t n, double s);
using AxpyFn = void (*)(double* y, const double* x, std::size_t n, double a);

struct Ops {
  std::string_view name;
  SpmvFn spmv;
  ReduceFn l1_norm;
  ReduceFn max_abs;
  Reduce2Fn max_abs_diff;  // max_i |a[i] - b[i]|
  ScaleFn scale;           // v *= s
  AxpyFn axpy;             // y += a * x
};

const Ops& scalar_ops();
bool avx2_supported();    // built with AVX2 variant and the CPU has it
const Ops& avx2_ops();    // only valid when avx2_supported()

// Runtime-selected table (AVX2 when supported, scalar otherwise).
const Ops& active();

// Force a table by name ("scalar", "avx2", "auto"). Returns false if the
// request cannot be honored on this machine.
bool force(std::string_view name);

}  // namespace evc::kernels
