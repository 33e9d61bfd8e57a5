#pragma once

// Scalar and 2x2 matrix-valued special functions of the two-periodic model:
// the surface square root y(z), the eigenvalues rho/lambda, the symbols
// A, F, W, the eigenvector frame E, and branch-free integer powers of the
// spectral factors. Everything is a pure function of (z, params).

#include "aztec/types.hpp"

#include <utility>

namespace aztec {

namespace alg {

// Formula layer, templated on the complex type so the same expressions can
// be cross-checked in higher precision (see tests). `C` must behave like
// std::complex<FP>.
//
// The analytic branch of sqrt(z (z+a2)(z+b2)) on the cut plane
// C \ ((-inf,-a2] u [-b2, 0]), positive on (0, inf), is realized as the
// product of the three principal square roots: the sign jumps of sqrt(z)
// and sqrt(z+b2) cancel across (-a2,-b2), so no correction table is needed.
// The resulting branch is negative on (-a2,-b2).
template <class C>
C sqrt_surface_raw(const C& z, double alpha2, double beta2) {
  using std::sqrt;
  return sqrt(z) * sqrt(z + C(alpha2)) * sqrt(z + C(beta2));
}

template <class C>
C rho_raw(const C& z, int sheet, double alpha, double beta) {
  C y = sqrt_surface_raw(z, alpha * alpha, beta * beta);
  C r1 = C(alpha + beta) * z + y;
  if (sheet == 1) return r1;
  // rho1 rho2 = (alpha+beta)^2 z^2 - z(z+a^2)(z+b^2) = -z(z-1)^2 when
  // alpha beta = 1; the quotient form avoids the catastrophic cancellation
  // of (alpha+beta) z - y near the double zero of rho2 at z = 1.
  C zm1 = z - C(1.0);
  return -z * zm1 * zm1 / r1;
}

template <class C>
C lambda_raw(const C& z, int sheet, double alpha, double beta) {
  C r = rho_raw(z, sheet, alpha, beta);
  C zm1 = z - C(1.0);
  return r * r / (z * zm1 * zm1);
}

template <class C, class M>
M symbol_A_raw(const C& z, double alpha, double beta) {
  C d = z - C(1.0);
  return M(C(2.0 * alpha) * z / d, C(alpha) * (z + C(1.0)) / d,
           C(beta) * z * (z + C(1.0)) / d, C(2.0 * beta) * z / d);
}

template <class C, class M>
M symbol_F_raw(const C& z, double alpha, double beta) {
  C y = sqrt_surface_raw(z, alpha * alpha, beta * beta);
  C h = C(0.5) / y;
  C ab = C(alpha - beta);
  return M(C(0.5) + h * ab * z, h * C(alpha) * (z + C(1.0)),
           h * C(beta) * z * (z + C(1.0)), C(0.5) - h * ab * z);
}

template <class C, class M>
M weight_W_raw(const C& z, double alpha, double beta) {
  C zm1 = z - C(1.0);
  C d = zm1 * zm1;
  C zp1 = z + C(1.0);
  C s = C(2.0 * (alpha + beta));
  return M(((zp1 * zp1) + C(4.0 * alpha * alpha) * z) / d,
           C(alpha) * s * zp1 / d, C(beta) * s * z * zp1 / d,
           ((zp1 * zp1) + C(4.0 * beta * beta) * z) / d);
}

template <class C, class M>
M eigvec_E_raw(const C& z, double alpha, double beta) {
  C r1 = rho_raw(z, 1, alpha, beta);
  C r2 = rho_raw(z, 2, alpha, beta);
  C top = C(alpha) * (z + C(1.0));
  C az2 = C(2.0 * alpha) * z;
  return M(top, top, r1 - az2, r2 - az2);
}

}  // namespace alg

// Absolute distance from z to the cut (-inf, -alpha^2].
double dist_to_left_cut(Complex z, const WeightParams& p);
// Absolute distance from z to the cut [-beta^2, 0].
double dist_to_right_cut(Complex z, const WeightParams& p);

// Rejects points within `tol` of either cut. Silent perturbation is never
// applied; callers that want boundary values use the CutSide overloads.
void require_off_cuts(Complex z, const WeightParams& p, double tol = 1e-14);

// y(z) on sheet 1 (positive on the positive real axis).
Complex sqrt_surface(Complex z, const WeightParams& p);
// Boundary value of y on a cut, from above or below the axis.
Complex sqrt_surface(double x, CutSide side, const WeightParams& p);

Complex rho(const SurfacePoint& s, const WeightParams& p);
Complex lambda(const SurfacePoint& s, const WeightParams& p);
Complex lambda(double x, CutSide side, int sheet, const WeightParams& p);

// d/dz log lambda on the requested sheet: 2 rho'/rho - 1/z - 2/(z-1).
Complex dlog_lambda(const SurfacePoint& s, const WeightParams& p);

Mat2 symbol_A(Complex z, const WeightParams& p);
Mat2 symbol_F(Complex z, const WeightParams& p);
Mat2 symbol_F(double x, CutSide side, const WeightParams& p);
Mat2 weight_W(Complex z, const WeightParams& p);
Mat2 eigvec_E(Complex z, const WeightParams& p);

// Half-step symbols (A_{m,m+1/2}, A_{m+1/2,m+1}); their product is A.
std::pair<Mat2, Mat2> half_step_symbols(Complex z, const WeightParams& p);
Mat2 half_step_bernoulli(Complex z, const WeightParams& p);  // (alpha alpha; beta z beta)
Mat2 half_step_geometric(Complex z, const WeightParams& p);  // (z 1; z z)/(z-1)

// Spectral projection of A^{2k}(z)/z^k: returns the projector (F on sheet 1,
// I-F on sheet 2) together with lambda_sheet(z)^k as a ScaledValue. Integer
// exponents are applied to a fixed log branch, so the result is
// branch-independent.
std::pair<Mat2, ScaledValue> projected_power(Complex z, long long k, int sheet,
                                             const WeightParams& p);

// lambda_sheet(z)^k as a ScaledValue (same branch-free evaluation).
ScaledValue lambda_power(Complex z, long long k, int sheet, const WeightParams& p);

// rho_sheet(z)^k as a ScaledValue.
ScaledValue rho_power(Complex z, long long k, int sheet, const WeightParams& p);

// w^k for integer k as a ScaledValue.
ScaledValue complex_power(Complex w, long long k);

// M^k with a scalar pulled out so that the returned matrix stays O(1).
std::pair<Mat2, ScaledValue> matrix_power_scaled(const Mat2& a, long long k);

}  // namespace aztec
