// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma in its own translation
// unit; only reachable through the dispatch table after a cpuid check.

#include "dph/kernels.hpp"

#ifdef DPH_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

#include "kernels_detail.hpp"

namespace dph::kernels {

namespace {
using namespace detail;

void elementwise_max_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(out + i, _mm256_max_pd(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

// Four portable_cos lanes, same operation order as the scalar reference.
inline __m256d cos4(__m256d x) {
  const __m256d v_inv_pio2 = _mm256_set1_pd(inv_pio2);
  __m256d q = _mm256_round_pd(_mm256_mul_pd(x, v_inv_pio2),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fmadd_pd(q, _mm256_set1_pd(-pio2_1), x);
  r = _mm256_fmadd_pd(q, _mm256_set1_pd(-pio2_2), r);
  r = _mm256_fmadd_pd(q, _mm256_set1_pd(-pio2_3), r);
  __m256i quadrant = _mm256_and_si256(_mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q)),
                                      _mm256_set1_epi64x(3));

  __m256d s = _mm256_mul_pd(r, r);
  __m256d ps = _mm256_set1_pd(S6);
  ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S5));
  ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S4));
  ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S3));
  ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S2));
  ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S1));
  __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, s), ps, r);

  __m256d pc = _mm256_set1_pd(C6);
  pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C5));
  pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C4));
  pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C3));
  pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C2));
  pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C1));
  __m256d cos_r = _mm256_fmadd_pd(_mm256_mul_pd(s, s), pc,
                                  _mm256_fmadd_pd(s, _mm256_set1_pd(-0.5), _mm256_set1_pd(1.0)));

  // quadrant 0 -> cos, 1 -> -sin, 2 -> -cos, 3 -> sin
  __m256i odd = _mm256_cmpeq_epi64(_mm256_and_si256(quadrant, _mm256_set1_epi64x(1)),
                                   _mm256_set1_epi64x(1));
  __m256i negate = _mm256_or_si256(_mm256_cmpeq_epi64(quadrant, _mm256_set1_epi64x(1)),
                                   _mm256_cmpeq_epi64(quadrant, _mm256_set1_epi64x(2)));
  __m256d value = _mm256_blendv_pd(cos_r, sin_r, _mm256_castsi256_pd(odd));
  return _mm256_xor_pd(value,
                       _mm256_and_pd(_mm256_castsi256_pd(negate), _mm256_set1_pd(-0.0)));
}

void cos_accumulate_avx2(double* acc, std::size_t n, double amplitude, double phase,
                         double step) {
  const __m256d v_step = _mm256_set1_pd(step);
  const __m256d v_phase = _mm256_set1_pd(phase);
  const __m256d v_amp = _mm256_set1_pd(amplitude);
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_fmadd_pd(idx, v_step, v_phase);
    __m256d value = _mm256_fmadd_pd(v_amp, cos4(x), _mm256_loadu_pd(acc + i));
    _mm256_storeu_pd(acc + i, value);
    idx = _mm256_add_pd(idx, four);
  }
  for (; i < n; ++i) {
    double x = std::fma(static_cast<double>(i), step, phase);
    acc[i] = std::fma(amplitude, portable_cos(x), acc[i]);
  }
}

std::uint64_t row_minima_avx2(const double* c, const double* ym, const double* yp,
                              const double* zm, const double* zp, std::size_t n) {
  std::uint64_t count = 0;
  std::size_t x = 1;
  if (n >= 2) {
    for (; x + 4 <= n - 1; x += 4) {
      __m256d center = _mm256_loadu_pd(c + x);
      __m256d lt = _mm256_cmp_pd(center, _mm256_loadu_pd(c + x - 1), _CMP_LT_OQ);
      lt = _mm256_and_pd(lt, _mm256_cmp_pd(center, _mm256_loadu_pd(c + x + 1), _CMP_LT_OQ));
      lt = _mm256_and_pd(lt, _mm256_cmp_pd(center, _mm256_loadu_pd(ym + x), _CMP_LT_OQ));
      lt = _mm256_and_pd(lt, _mm256_cmp_pd(center, _mm256_loadu_pd(yp + x), _CMP_LT_OQ));
      lt = _mm256_and_pd(lt, _mm256_cmp_pd(center, _mm256_loadu_pd(zm + x), _CMP_LT_OQ));
      lt = _mm256_and_pd(lt, _mm256_cmp_pd(center, _mm256_loadu_pd(zp + x), _CMP_LT_OQ));
      count += static_cast<std::uint64_t>(__builtin_popcount(
          static_cast<unsigned>(_mm256_movemask_pd(lt))));
    }
  }
  for (; x + 1 < n; ++x) {
    if (c[x] < c[x - 1] && c[x] < c[x + 1] && c[x] < ym[x] && c[x] < yp[x] && c[x] < zm[x] &&
        c[x] < zp[x])
      ++count;
  }
  return count;
}

constexpr kernel_table table{"avx2", elementwise_max_avx2, cos_accumulate_avx2,
                             row_minima_avx2};

}  // namespace

const kernel_table* avx2_impl() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &table;
  return nullptr;
}

}  // namespace dph::kernels

#else

namespace dph::kernels {
const kernel_table* avx2_impl() { return nullptr; }
}  // namespace dph::kernels

#endif
