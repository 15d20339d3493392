#pragma once

#include <cstddef>
#include <cstdint>

namespace dph::kernels {

// Data-parallel inner loops with scalar reference implementations and SIMD
// variants selected at runtime. Every variant is bit-exact against the scalar
// reference: the arithmetic kernels round identically because both sides use
// fused multiply-adds in the same order (std::fma in the reference).
struct kernel_table {
  const char* name;

  // out[i] = max(a[i], b[i])
  void (*elementwise_max)(const double* a, const double* b, double* out, std::size_t n);

  // acc[i] += amplitude * cos(phase + i * step)
  void (*cos_accumulate)(double* acc, std::size_t n, double amplitude, double phase,
                         double step);

  // Number of x in [1, n-2] with c[x] strictly below all six grid neighbors
  // (c[x-1], c[x+1], and the same x in the four adjacent rows).
  std::uint64_t (*row_minima)(const double* c, const double* ym, const double* yp,
                              const double* zm, const double* zp, std::size_t n);
};

const kernel_table& scalar();

// AVX2+FMA variant, or nullptr when not compiled in or not supported by the
// host CPU.
const kernel_table* avx2();

// Best available table; the DPH_KERNELS environment variable ("scalar",
// "avx2") overrides selection, read once on first use.
const kernel_table& active();

// cos(x) with Cody-Waite range reduction and fdlibm kernel polynomials, rounded
// step-for-step like the SIMD lanes. Accurate to ~1e-15 absolute for the
// argument magnitudes the callers produce (|x| up to ~1e5). Assumes the
// default round-to-nearest mode.
double portable_cos(double x);

}  // namespace dph::kernels
