#include "aztec/algebra.hpp"

namespace aztec {

double dist_to_left_cut(Complex z, const WeightParams& p) {
  double a2 = p.alpha2();
  if (z.real() <= -a2) return std::abs(z.imag());
  return std::abs(z - Complex(-a2, 0.0));
}

double dist_to_right_cut(Complex z, const WeightParams& p) {
  double b2 = p.beta2();
  if (z.real() >= 0.0) return std::abs(z);
  if (z.real() <= -b2) return std::abs(z - Complex(-b2, 0.0));
  return std::abs(z.imag());
}

void require_off_cuts(Complex z, const WeightParams& p, double tol) {
  if (dist_to_left_cut(z, p) < tol || dist_to_right_cut(z, p) < tol)
    throw DomainError("point is on (or within tolerance of) a branch cut");
}

Complex sqrt_surface(Complex z, const WeightParams& p) {
  require_off_cuts(z, p);
  return alg::sqrt_surface_raw(z, p.alpha2(), p.beta2());
}

namespace {
// Boundary evaluation uses IEEE signed zeros: the principal sqrt of a
// negative real with imaginary part +-0.0 lands on the requested side.
Complex boundary_point(double x, CutSide side) {
  return Complex(x, side == CutSide::Above ? +0.0 : -0.0);
}
}  // namespace

Complex sqrt_surface(double x, CutSide side, const WeightParams& p) {
  return alg::sqrt_surface_raw(boundary_point(x, side), p.alpha2(), p.beta2());
}

Complex rho(const SurfacePoint& s, const WeightParams& p) {
  require_off_cuts(s.z, p);
  return alg::rho_raw(s.z, s.sheet, p.alpha, p.beta);
}

Complex lambda(const SurfacePoint& s, const WeightParams& p) {
  require_off_cuts(s.z, p);
  if (std::abs(s.z) < 1e-14 || std::abs(s.z - 1.0) < 1e-14)
    throw DomainError("lambda: z in {0, 1}");
  return alg::lambda_raw(s.z, s.sheet, p.alpha, p.beta);
}

Complex lambda(double x, CutSide side, int sheet, const WeightParams& p) {
  return alg::lambda_raw(boundary_point(x, side), sheet, p.alpha, p.beta);
}

Complex dlog_lambda(const SurfacePoint& s, const WeightParams& p) {
  require_off_cuts(s.z, p);
  Complex z = s.z;
  if (std::abs(z) < 1e-14 || std::abs(z - 1.0) < 1e-14)
    throw DomainError("dlog_lambda: z in {0, 1}");
  // lambda_2 = 1/lambda_1, so the second sheet is the negated first
  if (s.sheet == 2) return -dlog_lambda({z, 1}, p);
  Complex y = alg::sqrt_surface_raw(z, p.alpha2(), p.beta2());
  // y'/y = (1/z + 1/(z+a2) + 1/(z+b2)) / 2
  Complex dy = y * 0.5 * (1.0 / z + 1.0 / (z + p.alpha2()) + 1.0 / (z + p.beta2()));
  Complex r = (p.alpha + p.beta) * z + y;
  Complex dr = (p.alpha + p.beta) + dy;
  return 2.0 * dr / r - 1.0 / z - 2.0 / (z - 1.0);
}

Mat2 symbol_A(Complex z, const WeightParams& p) {
  if (std::abs(z - 1.0) < 1e-14) throw DomainError("symbol_A: pole at z = 1");
  return alg::symbol_A_raw<Complex, Mat2>(z, p.alpha, p.beta);
}

Mat2 symbol_F(Complex z, const WeightParams& p) {
  require_off_cuts(z, p);
  return alg::symbol_F_raw<Complex, Mat2>(z, p.alpha, p.beta);
}

Mat2 symbol_F(double x, CutSide side, const WeightParams& p) {
  return alg::symbol_F_raw<Complex, Mat2>(boundary_point(x, side), p.alpha, p.beta);
}

Mat2 weight_W(Complex z, const WeightParams& p) {
  if (std::abs(z) < 1e-14 || std::abs(z - 1.0) < 1e-14)
    throw DomainError("weight_W: z in {0, 1}");
  return alg::weight_W_raw<Complex, Mat2>(z, p.alpha, p.beta);
}

Mat2 eigvec_E(Complex z, const WeightParams& p) {
  require_off_cuts(z, p);
  if (std::abs(z) < 1e-14 || std::abs(z + 1.0) < 1e-14)
    throw DomainError("eigvec_E: det E vanishes");
  return alg::eigvec_E_raw<Complex, Mat2>(z, p.alpha, p.beta);
}

Mat2 half_step_bernoulli(Complex z, const WeightParams& p) {
  return Mat2(p.alpha, p.alpha, p.beta * z, p.beta);
}

Mat2 half_step_geometric(Complex z, const WeightParams& p) {
  (void)p;
  if (std::abs(z - 1.0) < 1e-14) throw DomainError("half_step_geometric: pole at z = 1");
  Complex d = z - 1.0;
  return Mat2(z / d, 1.0 / d, z / d, z / d);
}

std::pair<Mat2, Mat2> half_step_symbols(Complex z, const WeightParams& p) {
  return {half_step_bernoulli(z, p), half_step_geometric(z, p)};
}

ScaledValue complex_power(Complex w, long long k) {
  if (k == 0) return ScaledValue::one();
  if (std::abs(w) == 0.0) {
    if (k < 0) throw DomainError("complex_power: 0^k with k < 0");
    return {-std::numeric_limits<double>::infinity(), 1.0};
  }
  return ScaledValue::from_log(Complex(double(k)) * std::log(w));
}

ScaledValue rho_power(Complex z, long long k, int sheet, const WeightParams& p) {
  if (k == 0) return ScaledValue::one();
  Complex r = alg::rho_raw(z, sheet, p.alpha, p.beta);
  if (std::abs(r) == 0.0) {
    if (k < 0) throw DomainError("rho_power: rho vanishes");
    return {-std::numeric_limits<double>::infinity(), 1.0};
  }
  return ScaledValue::from_log(Complex(double(k)) * std::log(r));
}

ScaledValue lambda_power(Complex z, long long k, int sheet, const WeightParams& p) {
  // lambda^k = rho^{2k} z^{-k} (z-1)^{-2k}; fixed principal logs with
  // integer exponents give the branch-independent value.
  return rho_power(z, 2 * k, sheet, p) * complex_power(z, -k) *
         complex_power(z - 1.0, -2 * k);
}

std::pair<Mat2, ScaledValue> projected_power(Complex z, long long k, int sheet,
                                             const WeightParams& p) {
  require_off_cuts(z, p);
  if (std::abs(z) < 1e-14 || std::abs(z - 1.0) < 1e-14)
    throw DomainError("projected_power: z in {0, 1}");
  Mat2 f = symbol_F(z, p);
  Mat2 proj = (sheet == 1) ? f : Mat2(Mat2::identity() - f);
  return {proj, lambda_power(z, k, sheet, p)};
}

std::pair<Mat2, ScaledValue> matrix_power_scaled(const Mat2& a, long long k) {
  if (k == 0) return {Mat2::identity(), ScaledValue::one()};
  Mat2 base = a;
  if (k < 0) {
    base = a.inverse();
    k = -k;
  }
  // true_base = base * exp(base_log); factored scalars are positive reals,
  // so no phase bookkeeping is needed.
  double base_log = 0.0;
  double acc_log = 0.0;
  Mat2 acc = Mat2::identity();
  auto renorm = [](Mat2& m, double& lg) {
    double v = m.max_abs();
    if (v > 0.0 && std::isfinite(v)) {
      m = m / Complex(v);
      lg += std::log(v);
    }
  };
  renorm(base, base_log);
  while (k > 0) {
    if (k & 1) {
      acc = acc * base;
      acc_log += base_log;
      renorm(acc, acc_log);
    }
    k >>= 1;
    if (k > 0) {
      base = base * base;
      base_log *= 2.0;
      renorm(base, base_log);
    }
  }
  return {acc, ScaledValue{acc_log, 1.0}};
}

}  // namespace aztec
