#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace aztec {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Evaluation point on a branch cut, at a pole, or otherwise outside the
// domain of an operation.
class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

// Adaptive quadrature exhausted its node budget before reaching the
// requested tolerance, or two contours passed too close to each other.
class ConvergenceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class InvalidInput : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Two-periodic weights alpha = a^2, beta = b^2 normalized to alpha*beta = 1,
// plus the derived constants used in the cusp scaling.
struct WeightParams {
  double alpha = 2.0;
  double beta = 0.5;
  double xi2_star = 0.0;  // (alpha-beta)/(alpha+beta), cusp ordinate
  double c0 = 0.0;        // (alpha+beta)/sqrt(2)
  double c1 = 0.0;        // 2^{1/4}/sqrt(alpha-beta), +inf when alpha == 1
  double c2 = 0.0;        // sqrt(2)/(alpha+beta)

  explicit WeightParams(double alpha_) {
    if (!(alpha_ >= 1.0) || !std::isfinite(alpha_))
      throw InvalidInput("WeightParams: alpha must be finite and >= 1");
    alpha = alpha_;
    beta = 1.0 / alpha_;
    xi2_star = (alpha - beta) / (alpha + beta);
    c0 = (alpha + beta) / std::sqrt(2.0);
    c1 = (alpha > 1.0) ? std::pow(2.0, 0.25) / std::sqrt(alpha - beta)
                       : std::numeric_limits<double>::infinity();
    c2 = std::sqrt(2.0) / (alpha + beta);
  }

  double alpha2() const { return alpha * alpha; }  // left cut endpoint is -alpha2
  double beta2() const { return beta * beta; }     // right cut is [-beta2, 0]
  bool degenerate() const { return alpha == 1.0; }
};

// 2x2 complex matrix, row-major. The universal value type for the symbols
// A, F, W, E and for correlation-kernel blocks.
struct Mat2 {
  Complex m[4] = {0.0, 0.0, 0.0, 0.0};

  Mat2() = default;
  Mat2(Complex a, Complex b, Complex c, Complex d) : m{a, b, c, d} {}

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {}; }

  Complex& operator()(int r, int c) { return m[2 * r + c]; }
  const Complex& operator()(int r, int c) const { return m[2 * r + c]; }

  Mat2 operator+(const Mat2& o) const {
    return {m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3]};
  }
  Mat2 operator-(const Mat2& o) const {
    return {m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]};
  }
  Mat2 operator*(const Mat2& o) const {
    return {m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
            m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]};
  }
  Mat2 operator*(Complex s) const { return {m[0] * s, m[1] * s, m[2] * s, m[3] * s}; }
  Mat2 operator/(Complex s) const { return {m[0] / s, m[1] / s, m[2] / s, m[3] / s}; }
  Mat2& operator+=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) m[i] += o.m[i];
    return *this;
  }
  Mat2 operator-() const { return {-m[0], -m[1], -m[2], -m[3]}; }

  Complex det() const { return m[0] * m[3] - m[1] * m[2]; }
  Complex trace() const { return m[0] + m[3]; }

  Mat2 inverse() const {
    Complex d = det();
    if (std::abs(d) == 0.0) throw DomainError("Mat2::inverse: singular matrix");
    return Mat2(m[3], -m[1], -m[2], m[0]) / d;
  }

  double max_abs() const {
    double v = 0.0;
    for (const auto& e : m) v = std::max(v, std::abs(e));
    return v;
  }
  double max_abs_imag() const {
    double v = 0.0;
    for (const auto& e : m) v = std::max(v, std::abs(e.imag()));
    return v;
  }
  double frob() const {
    double v = 0.0;
    for (const auto& e : m) v += std::norm(e);
    return std::sqrt(v);
  }
  Mat2 real_part() const {
    return {m[0].real(), m[1].real(), m[2].real(), m[3].real()};
  }
};

inline Mat2 operator*(Complex s, const Mat2& a) { return a * s; }

// Neumaier-compensated accumulator for Mat2 sums; keeps long cancelling
// contour sums at a few ulps of the term magnitude.
struct Mat2Accum {
  double s[8] = {0};  // re/im interleaved
  double c[8] = {0};
  void add(const Mat2& v) {
    for (int k = 0; k < 4; ++k) {
      add1(2 * k, v.m[k].real());
      add1(2 * k + 1, v.m[k].imag());
    }
  }
  void add1(int i, double x) {
    double t = s[i] + x;
    if (std::abs(s[i]) >= std::abs(x))
      c[i] += (s[i] - t) + x;
    else
      c[i] += (x - t) + s[i];
    s[i] = t;
  }
  Mat2 value() const {
    Mat2 m;
    for (int k = 0; k < 4; ++k) m.m[k] = Complex(s[2 * k] + c[2 * k], s[2 * k + 1] + c[2 * k + 1]);
    return m;
  }
};

// Value represented as phase * exp(log_magnitude); keeps products of the
// form lambda^k, rho^k, (z-1)^k out of the double-precision overflow range
// for exponents into the thousands.
struct ScaledValue {
  double log_magnitude = 0.0;
  Complex phase = 1.0;  // unit modulus

  static ScaledValue one() { return {}; }

  // exp(l) for a complex log l, without forming exp(Re l).
  static ScaledValue from_log(Complex l) {
    return {l.real(), std::polar(1.0, l.imag())};
  }
  static ScaledValue from_value(Complex v) {
    double a = std::abs(v);
    if (a == 0.0) return {-std::numeric_limits<double>::infinity(), 1.0};
    return {std::log(a), v / a};
  }

  ScaledValue operator*(const ScaledValue& o) const {
    return {log_magnitude + o.log_magnitude, phase * o.phase};
  }
  ScaledValue operator/(const ScaledValue& o) const {
    return {log_magnitude - o.log_magnitude, phase / o.phase};
  }

  Complex value() const { return phase * std::exp(log_magnitude); }
};

// Point on the two-sheeted surface y^2 = z (z + alpha^2)(z + beta^2);
// sheet 1 carries the branch of the square root that is positive on (0,inf).
struct SurfacePoint {
  Complex z;
  int sheet = 1;  // 1 or 2
  SurfacePoint(Complex z_, int sheet_) : z(z_), sheet(sheet_) {
    if (sheet_ != 1 && sheet_ != 2) throw InvalidInput("SurfacePoint: sheet must be 1 or 2");
  }
};

enum class CutSide { Above, Below };

}  // namespace aztec
