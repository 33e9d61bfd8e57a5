#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aztec/kernel.hpp"
#include "aztec/quadrature.hpp"

using namespace aztec;

namespace {
Mat2 scalar(Complex v) { return Mat2(v, 0.0, 0.0, v); }
}

TEST_CASE("residue basics on the unit circle") {
  QuadratureSpec spec;
  CircleContour unit(Complex(0, 0), 1.0, +1);
  Mat2 r = integrate_circle([](Complex z) { return scalar(1.0 / z); }, unit, spec);
  CHECK(std::abs(r(0, 0) - 1.0) < 1e-12);
  Mat2 z1 = integrate_circle([](Complex z) { return scalar(z); }, unit, spec);
  CHECK(z1.max_abs() < 1e-12);
}

TEST_CASE("rational matrix integrand matches residue oracle") {
  WeightParams p(2.0);
  QuadratureSpec spec;
  CircleContour c(Complex(0.5, 0.0), 1.0, +1);  // encloses 0 and 1
  auto f = [&](Complex z) { return symbol_A(z, p) / z; };
  Mat2 got = integrate_circle(f, c, spec);
  // A(z)/z = B(z)/(z(z-1)) with B entire: residues A-limit at 0 plus B(1)
  Mat2 res0(0.0, -p.alpha, 0.0, 0.0);  // lim_{z->0} A(z) ... simple pole of A/z at 0
  Mat2 res1(2.0 * p.alpha, 2.0 * p.alpha, 2.0 * p.beta, 2.0 * p.beta);  // B(1)
  Mat2 expect = res0 + res1;
  CHECK((got - expect).max_abs() < 1e-10);
}

TEST_CASE("trapezoid error decays geometrically for analytic integrands") {
  WeightParams p(2.0);
  CircleContour c(Complex(0.5, 0.0), 1.0, +1);
  auto f = [&](Complex z) { return symbol_A(z, p) / z; };
  QuadratureSpec tight;
  tight.rel_tol = 1e-13;
  Mat2 ref = integrate_circle(f, c, tight);
  auto err_at = [&](int n) {
    ContourNodes nodes = circle_nodes(c, n);
    Mat2 acc = Mat2::zero();
    for (size_t i = 0; i < nodes.z.size(); ++i) acc += f(nodes.z[i]) * nodes.w[i];
    return (acc - ref).max_abs();
  };
  double e8 = err_at(8), e16 = err_at(16), e32 = err_at(32);
  CHECK(e16 < e8);
  CHECK(e32 < e16);
  CHECK(e32 < 0.1 * e8);  // at least geometric before hitting noise
}

TEST_CASE("orientation reversal negates exactly") {
  WeightParams p(2.0);
  QuadratureSpec spec;
  CircleContour pos(Complex(0.5, 0.0), 1.0, +1), neg(Complex(0.5, 0.0), 1.0, -1);
  auto f = [&](Complex z) { return symbol_A(z, p) / z; };
  Mat2 a = integrate_circle(f, pos, spec);
  Mat2 b = integrate_circle(f, neg, spec);
  CHECK((a + b).max_abs() == 0.0);
}

TEST_CASE("double integral matches iterated quadrature") {
  QuadratureSpec spec;
  CircleContour cz(Complex(0.0, 0.0), 2.0, +1);
  CircleContour cw(Complex(3.0, 0.0), 0.5, +1);
  auto f = [](Complex z, Complex w) { return scalar(1.0 / (z * (z - w))); };
  Mat2 got = integrate_double(f, as_double_contour(cz, spec), as_double_contour(cw, spec),
                              spec, 1e-3);
  // iterated oracle: inner z-integral for fixed w gives residues at 0 and w
  // (both inside |z| = 2): 1/(z(z-w)) -> -1/w + 1/w = 0
  auto inner = [&](Complex w) {
    return integrate_circle([&](Complex z) { return scalar(1.0 / (z * (z - w))); }, cz, spec);
  };
  Mat2 iter = integrate_circle([&](Complex w) { return inner(w); }, cw, spec);
  CHECK((got - iter).max_abs() < 1e-10);
  CHECK(got.max_abs() < 1e-10);  // and the value itself vanishes

  Mat2 zero = integrate_double([](Complex, Complex) { return Mat2::zero(); },
                               as_double_contour(cz, spec), as_double_contour(cw, spec), spec,
                               1e-3);
  CHECK(zero.max_abs() == 0.0);
}

TEST_CASE("contour collision is detected") {
  QuadratureSpec spec;
  CircleContour cz(Complex(0.0, 0.0), 1.0, +1);
  CircleContour cw(Complex(0.0, 0.0), 1.0005, +1);
  auto f = [](Complex z, Complex w) { return scalar(1.0 / (z - w)); };
  CHECK_THROWS_AS(integrate_double(f, as_double_contour(cz, spec),
                                   as_double_contour(cw, spec), spec, 1e-3),
                  ConvergenceError);
}

TEST_CASE("cut contour: entire integrand integrates to zero") {
  WeightParams p(2.0);
  QuadratureSpec spec;
  CutContour cc;
  cc.decay_exponent = -2.0;  // e^{-w^2} beats any algebraic bound along the rays
  cc.include_right_wrap = true;
  auto f = [](Complex w) { return scalar(std::exp(-w * w / 50.0)); };
  Mat2 r = integrate_cut(f, cc, p, spec);
  CHECK(r.max_abs() < 1e-9);
}

TEST_CASE("cut contour: algebraic branch integrand against refined reference") {
  WeightParams p(2.0);
  QuadratureSpec spec;
  double a2 = p.alpha2();
  auto f = [&](Complex w) {
    return scalar(std::pow(w + a2, -1.5));  // principal branch, cut (-inf,-a2]
  };
  // fixed truncation so both resolutions integrate the same path
  CutContour cc;
  cc.decay_exponent = -1.5;
  cc.left_truncation = -a2 - 5e4;
  cc.include_right_wrap = false;
  Mat2 got = integrate_cut(f, cc, p, spec);
  QuadratureSpec fine = spec;
  fine.rel_tol = 1e-13;
  fine.max_nodes = 10 * spec.max_nodes;
  Mat2 ref = integrate_cut(f, cc, p, fine);
  CHECK((got - ref).max_abs() < 1e-9);
  // closed-contour value is 0 (no residue at infinity); the truncated wrap
  // differs by the tail only
  double tailbound = 2.0 * std::pow(5e4, -0.5) / (0.5 * 2.0 * kPi);
  CHECK(got.max_abs() < 2.0 * tailbound);
}

TEST_CASE("cut contour rejects insufficient decay") {
  WeightParams p(2.0);
  QuadratureSpec spec;
  CutContour cc;
  cc.decay_exponent = -0.5;
  auto f = [](Complex) { return scalar(1.0); };
  CHECK_THROWS_AS(integrate_cut(f, cc, p, spec), InvalidInput);
}

TEST_CASE("kernel z-integrand is contour-deformation invariant") {
  WeightParams p(2.0);
  const int N = 4, m = 2, n = 2;
  auto zint = [&](Complex z) -> Mat2 {
    auto [M, s] = matrix_power_scaled(symbol_A(z, p), m - N);
    return M * (s * complex_power(z, (N - m - n) / 2) * complex_power(z - 1.0, N)).value() /
           z;
  };
  QuadratureSpec spec;
  Mat2 r1 = integrate_circle(zint, CircleContour(Complex(0.5, 0.0), 1.7, +1), spec);
  Mat2 r2 = integrate_circle(zint, CircleContour(Complex(0.5, 0.0), 2.3, +1), spec);
  Mat2 r3 = integrate_circle(zint, CircleContour(Complex(0.3, 0.1), 2.0, +1), spec);
  CHECK((r1 - r2).max_abs() < 1e-9 * std::max(1.0, r1.max_abs()));
  CHECK((r1 - r3).max_abs() < 1e-9 * std::max(1.0, r1.max_abs()));
}

TEST_CASE("epsilon refinement leaves the stabilized integrand unchanged") {
  // halving the cut-contour offset must not move the N=8 remainder integral
  WeightParams p(2.0);
  const int N = 8, m = 8, n = 8;
  QuadratureSpec spec;
  auto remainder_with_eps = [&](double eps) -> Mat2 {
    CircleContour zc(Complex(0.0, 0.0), 1.0, +1, 0.2347);
    PiecewisePath wpath = left_cut_wrap(p, eps, eps, -(p.alpha2() + 40.0));
    PiecewisePath right = right_cut_wrap(p, eps, eps);
    for (auto& piece : right.pieces) wpath.pieces.push_back(piece);
    struct ZCtx {
      Mat2 F;
      ScaledValue s1, s2;
    };
    struct WCtx {
      Mat2 F;
      ScaledValue s;
    };
    auto prep_z = [&](Complex z) -> ZCtx {
      ScaledValue tail =
          complex_power(z - 1.0, 2 * N - m) * complex_power(z, (N - m - n) / 2);
      return {symbol_F(z, p), rho_power(z, m - N, 1, p) * tail,
              rho_power(z, m - N, 2, p) * tail};
    };
    auto prep_w = [&](Complex w) -> WCtx {
      ScaledValue sw = rho_power(w, N - m, 1, p) * complex_power(w - 1.0, m - 2 * N) *
                       complex_power(w, (m + n - N) / 2);
      return {symbol_F(w, p), sw};
    };
    Mat2 id = Mat2::identity();
    auto combine = [&](const ZCtx& zc2, const WCtx& wc, Complex z, Complex w) -> Mat2 {
      Mat2 res = (wc.F * zc2.F) * (zc2.s1 * wc.s).value() +
                 (wc.F * (id - zc2.F)) * (zc2.s2 * wc.s).value();
      return res * (1.0 / (z * (z - w)));
    };
    return integrate_double_ctx<ZCtx, WCtx>(prep_z, prep_w, combine,
                                            as_double_contour(zc, spec),
                                            as_double_contour(wpath, spec), spec, 1e-3);
  };
  Mat2 a = remainder_with_eps(1e-2);
  Mat2 b = remainder_with_eps(5e-3);
  CHECK((a - b).max_abs() < 1e-8);
}
