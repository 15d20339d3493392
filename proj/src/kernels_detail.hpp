#pragma once

// Constants shared by the scalar reference kernels and the SIMD variants.
// Range reduction is Cody-Waite with the fdlibm 3-way split of pi/2; the
// kernel polynomials are the fdlibm k_sin/k_cos coefficients. Both sides must
// evaluate them with fused multiply-adds in the same order to stay bit-exact.

namespace dph::kernels::detail {

inline constexpr double inv_pio2 = 6.36619772367581382433e-01;
inline constexpr double pio2_1 = 1.57079632673412561417e+00;
inline constexpr double pio2_2 = 6.07710050630396597660e-11;
inline constexpr double pio2_3 = 2.02226624879595063154e-21;

inline constexpr double S1 = -1.66666666666666324348e-01;
inline constexpr double S2 = 8.33333333332248946124e-03;
inline constexpr double S3 = -1.98412698298579493134e-04;
inline constexpr double S4 = 2.75573137070700676789e-06;
inline constexpr double S5 = -2.50507602534068634195e-08;
inline constexpr double S6 = 1.58969099521155010221e-10;

inline constexpr double C1 = 4.16666666666666019037e-02;
inline constexpr double C2 = -1.38888888888741095749e-03;
inline constexpr double C3 = 2.48015872894767294178e-05;
inline constexpr double C4 = -2.75573143513906633035e-07;
inline constexpr double C5 = 2.08757232129817482790e-09;
inline constexpr double C6 = -1.13596475577881948265e-11;

}  // namespace dph::kernels::detail
