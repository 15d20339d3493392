#include <cmath>

#include "dph/kernels.hpp"
#include "kernels_detail.hpp"

namespace dph::kernels {

namespace {
using namespace detail;

void elementwise_max_scalar(const double* a, const double* b, double* out, std::size_t n) {
  // Matches the vmaxpd lane rule (second operand on unordered compare).
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

void cos_accumulate_scalar(double* acc, std::size_t n, double amplitude, double phase,
                           double step) {
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::fma(static_cast<double>(i), step, phase);
    acc[i] = std::fma(amplitude, portable_cos(x), acc[i]);
  }
}

std::uint64_t row_minima_scalar(const double* c, const double* ym, const double* yp,
                                const double* zm, const double* zp, std::size_t n) {
  std::uint64_t count = 0;
  for (std::size_t x = 1; x + 1 < n; ++x) {
    if (c[x] < c[x - 1] && c[x] < c[x + 1] && c[x] < ym[x] && c[x] < yp[x] && c[x] < zm[x] &&
        c[x] < zp[x])
      ++count;
  }
  return count;
}

constexpr kernel_table table{"scalar", elementwise_max_scalar, cos_accumulate_scalar,
                             row_minima_scalar};

}  // namespace

double portable_cos(double x) {
  double q = std::nearbyint(x * inv_pio2);
  double r = std::fma(q, -pio2_1, x);
  r = std::fma(q, -pio2_2, r);
  r = std::fma(q, -pio2_3, r);
  auto quadrant = static_cast<std::int64_t>(q) & 3;

  double s = r * r;
  double ps = S6;
  ps = std::fma(ps, s, S5);
  ps = std::fma(ps, s, S4);
  ps = std::fma(ps, s, S3);
  ps = std::fma(ps, s, S2);
  ps = std::fma(ps, s, S1);
  double sin_r = std::fma(r * s, ps, r);

  double pc = C6;
  pc = std::fma(pc, s, C5);
  pc = std::fma(pc, s, C4);
  pc = std::fma(pc, s, C3);
  pc = std::fma(pc, s, C2);
  pc = std::fma(pc, s, C1);
  double cos_r = std::fma(s * s, pc, std::fma(s, -0.5, 1.0));

  switch (quadrant) {
    case 0: return cos_r;
    case 1: return -sin_r;
    case 2: return -cos_r;
    default: return sin_r;
  }
}

const kernel_table& scalar() { return table; }

}  // namespace dph::kernels
