#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aztec/algebra.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <random>

using namespace aztec;

namespace {

std::mt19937_64 rng(20240811);

Complex random_point(double span = 3.0) {
  std::uniform_real_distribution<double> d(-span, span);
  return {d(rng), d(rng)};
}

// random point at distance > 0.05 from both cuts and from {0, 1, -1}
Complex random_safe_point(const WeightParams& p) {
  for (;;) {
    Complex z = random_point();
    if (dist_to_left_cut(z, p) < 0.05 || dist_to_right_cut(z, p) < 0.05) continue;
    if (std::abs(z) < 0.05 || std::abs(z - 1.0) < 0.05 || std::abs(z + 1.0) < 0.05) continue;
    return z;
  }
}

// Analytic continuation of sqrt(z(z+a^2)(z+b^2)) along a straight-line path,
// choosing the square root closest to the previous step. Independent of the
// closed-form branch realization.
Complex continue_sqrt_along_path(Complex z0, Complex z1, const WeightParams& p, int steps) {
  Complex prev = sqrt_surface(z0, p);
  for (int k = 1; k <= steps; ++k) {
    Complex z = z0 + (z1 - z0) * (double(k) / steps);
    Complex w2 = z * (z + p.alpha2()) * (z + p.beta2());
    Complex r = std::sqrt(w2);
    if (std::abs(r - prev) > std::abs(-r - prev)) r = -r;
    prev = r;
  }
  return prev;
}

}  // namespace

TEST_CASE("sqrt_surface normalization and direct values") {
  WeightParams trivial(1.0);
  CHECK(std::abs(sqrt_surface(Complex(1.0, 0.0), trivial) - 2.0) < 1e-14);

  WeightParams p(2.0);
  // sqrt(4 * 8 * 4.25) = sqrt(136)
  CHECK(std::abs(sqrt_surface(Complex(4.0, 0.0), p) - std::sqrt(136.0)) < 1e-12);
  // positive on the positive real axis
  for (double x : {0.3, 1.7, 9.0}) {
    Complex v = sqrt_surface(Complex(x, 0.0), p);
    CHECK(v.real() > 0.0);
    CHECK(std::abs(v.imag()) < 1e-14);
  }
}

TEST_CASE("sqrt_surface agrees with path continuation") {
  WeightParams p(2.0);
  // path from z=1 into the upper half-plane to -1 + 0.01i (between the cuts)
  Complex target(-1.0, 0.01);
  Complex via(0.3, 1.2);
  Complex cont = continue_sqrt_along_path(Complex(1.0, 0.0), via, p, 4000);
  // second leg, seeded by the first
  Complex prev = cont;
  for (int k = 1; k <= 8000; ++k) {
    Complex z = via + (target - via) * (double(k) / 8000);
    Complex r = std::sqrt(z * (z + p.alpha2()) * (z + p.beta2()));
    if (std::abs(r - prev) > std::abs(-r - prev)) r = -r;
    prev = r;
  }
  CHECK(std::abs(prev - sqrt_surface(target, p)) < 1e-10);
}

TEST_CASE("sqrt_surface branch is negative between the cuts") {
  WeightParams p(2.0);
  // continuity across (-alpha^2, -beta^2) forces the negative square root there
  Complex v = sqrt_surface(Complex(-1.0, 1e-13), p);
  double mag = std::sqrt(std::abs(-1.0 * (-1.0 + p.alpha2()) * (-1.0 + p.beta2())));
  CHECK(v.real() < 0.0);
  CHECK(std::abs(v - Complex(-mag, 0.0)) < 1e-6);
}

TEST_CASE("cut rejection and boundary values") {
  WeightParams p(2.0);
  CHECK_THROWS_AS(sqrt_surface(Complex(-5.0, 0.0), p), DomainError);
  CHECK_THROWS_AS(sqrt_surface(Complex(-0.1, 1e-15), p), DomainError);
  // boundary values from the two sides are opposite on the cut
  Complex above = sqrt_surface(-0.1, CutSide::Above, p);
  Complex below = sqrt_surface(-0.1, CutSide::Below, p);
  CHECK(std::abs(above + below) < 1e-14);
  CHECK(std::abs(above) > 0.0);
}

TEST_CASE("rho values and structure") {
  WeightParams trivial(1.0);
  CHECK(std::abs(rho({Complex(1.0, 0.0), 1}, trivial) - 4.0) < 1e-14);

  WeightParams p(2.0);
  // double zero of rho at z=1 on the second sheet
  CHECK(std::abs(rho({Complex(1.0, 0.0), 2}, p)) < 1e-13);
  double h = 1e-6;
  Complex d = (rho({Complex(1.0 + h, 0.0), 2}, p) - rho({Complex(1.0 - h, 0.0), 2}, p)) /
              (2.0 * h);
  CHECK(std::abs(d) < 1e-5);

  // rho1 rho2 = (alpha+beta)^2 z^2 - z(z+a^2)(z+b^2)
  for (int k = 0; k < 20; ++k) {
    Complex z = random_safe_point(p);
    Complex prod = rho({z, 1}, p) * rho({z, 2}, p);
    Complex s = p.alpha + p.beta;
    Complex expect = s * s * z * z - z * (z + p.alpha2()) * (z + p.beta2());
    CHECK(std::abs(prod - expect) < 1e-10 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("lambda inequalities and unit product") {
  WeightParams p(2.0);
  CHECK(lambda({Complex(0.5, 0.0), 1}, p).real() > 1.0);
  CHECK(lambda({Complex(-1.0, 0.0), 1}, p).real() < -1.0);
  {
    Complex l2 = lambda({Complex(-1.0, 0.0), 2}, p);
    CHECK(l2.real() > -1.0);
    CHECK(l2.real() < 0.0);
  }
  for (int k = 0; k < 20; ++k) {
    Complex z = random_safe_point(p);
    Complex prod = lambda({z, 1}, p) * lambda({z, 2}, p);
    CHECK(std::abs(prod - 1.0) < 1e-12);
    CHECK(std::abs(lambda({z, 1}, p)) > std::abs(lambda({z, 2}, p)));
  }
  CHECK_THROWS_AS(lambda({Complex(0.0, 0.0), 1}, p), DomainError);
  CHECK_THROWS_AS(lambda({Complex(1.0, 0.0), 1}, p), DomainError);
}

TEST_CASE("lambda has unit modulus on the cuts") {
  WeightParams p(2.0);
  for (double x : {-5.0, -4.5, -0.2, -0.05}) {
    for (double s : {1e-6, -1e-6}) {
      Complex l = alg::lambda_raw(Complex(x, s), 1, p.alpha, p.beta);
      CHECK(std::abs(std::abs(l) - 1.0) < 1e-4);
    }
  }
}

TEST_CASE("second-sheet continuation of F across the middle interval") {
  WeightParams p(2.0);
  // F just above (-a^2, -b^2)... the continuation statement concerns the
  // cuts themselves: just above a cut F equals I - F just below it
  for (double x : {-5.0, -0.15}) {
    Mat2 above = alg::symbol_F_raw<Complex, Mat2>(Complex(x, 1e-8), p.alpha, p.beta);
    Mat2 below = alg::symbol_F_raw<Complex, Mat2>(Complex(x, -1e-8), p.alpha, p.beta);
    Mat2 diff = above - (Mat2::identity() - below);
    CHECK(diff.max_abs() < 1e-6);
  }
}

TEST_CASE("symbol_A determinant and explicit value") {
  WeightParams p(2.0);
  for (int k = 0; k < 20; ++k) {
    Complex z = random_safe_point(p);
    CHECK(std::abs(symbol_A(z, p).det() + z) < 1e-12 * std::max(1.0, std::abs(z)));
  }
  Mat2 a = symbol_A(Complex(-1.0, 0.0), p);
  CHECK(std::abs(a(0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(a(0, 1)) < 1e-14);
  CHECK(std::abs(a(1, 0)) < 1e-14);
  CHECK(std::abs(a(1, 1) - 0.5) < 1e-14);
  CHECK_THROWS_AS(symbol_A(Complex(1.0, 0.0), p), DomainError);
}

TEST_CASE("half-step symbols compose to A") {
  WeightParams p(2.0);
  for (int k = 0; k < 20; ++k) {
    Complex z = random_safe_point(p);
    auto [b, g] = half_step_symbols(z, p);
    Mat2 prod = b * g;
    Mat2 a = symbol_A(z, p);
    CHECK((prod - a).max_abs() < 1e-12 * std::max(1.0, a.max_abs()));
    CHECK(std::abs(b.det() - (1.0 - z)) < 1e-12 * std::max(1.0, std::abs(z)));
  }
  // A_{m+1/2,m+1}(0) = (0,-1;0,0)
  Mat2 g0 = half_step_geometric(Complex(0.0, 0.0), p);
  CHECK(std::abs(g0(0, 0)) < 1e-14);
  CHECK(std::abs(g0(0, 1) + 1.0) < 1e-14);
  CHECK(std::abs(g0(1, 0)) < 1e-14);
  CHECK(std::abs(g0(1, 1)) < 1e-14);
}

TEST_CASE("F is the rank-one spectral projection") {
  WeightParams p(2.0);
  for (int k = 0; k < 20; ++k) {
    Complex z = random_safe_point(p);
    Mat2 f = symbol_F(z, p);
    CHECK((f * f - f).max_abs() < 1e-12 * std::max(1.0, f.max_abs()));
    CHECK(std::abs(f.trace() - 1.0) < 1e-12);
    Mat2 a = symbol_A(z, p);
    CHECK((f * a - a * f).max_abs() < 1e-11 * std::max(1.0, a.max_abs()));
  }
}

TEST_CASE("W properties: determinant, infinity limit, A^2/z") {
  WeightParams p(2.0);
  for (int k = 0; k < 20; ++k) {
    Complex z = random_safe_point(p);
    Mat2 w = weight_W(z, p);
    CHECK(std::abs(w.det() - 1.0) < 1e-12 * std::max(1.0, w.max_abs()));
    Mat2 a = symbol_A(z, p);
    CHECK((w - a * a / z).max_abs() < 1e-11 * std::max(1.0, w.max_abs()));
  }
  Mat2 winf = weight_W(Complex(1e8, 0.0), p);
  // the (2,1) limit is 2 beta (alpha+beta), from the explicit (2,1) entry
  // 2 beta (alpha+beta) z(z+1)/(z-1)^2
  Mat2 expect(1.0, 0.0, 2.0 * p.beta * (p.alpha + p.beta), 1.0);
  CHECK((winf - expect).max_abs() < 1e-6);
  CHECK_THROWS_AS(weight_W(Complex(0.0, 0.0), p), DomainError);
}

TEST_CASE("eigenvector frame diagonalizes W and produces F") {
  WeightParams p(2.0);
  for (int k = 0; k < 20; ++k) {
    Complex z = random_safe_point(p);
    Mat2 e = eigvec_E(z, p);
    Mat2 lam(lambda({z, 1}, p), 0.0, 0.0, lambda({z, 2}, p));
    Mat2 w = weight_W(z, p);
    CHECK((e * lam * e.inverse() - w).max_abs() < 1e-10 * std::max(1.0, w.max_abs()));
    CHECK(std::abs(e.det() + 2.0 * p.alpha * (z + 1.0) * sqrt_surface(z, p)) <
          1e-10 * std::max(1.0, e.max_abs()));
    Mat2 proj(1.0, 0.0, 0.0, 0.0);
    Mat2 f = symbol_F(z, p);
    CHECK((e * proj * e.inverse() - f).max_abs() < 1e-10 * std::max(1.0, f.max_abs()));
  }
}

TEST_CASE("projected powers rebuild full matrix powers") {
  WeightParams p(2.0);
  auto wpow = [&](Complex z, int k) {
    Mat2 w = weight_W(z, p);
    Mat2 acc = Mat2::identity();
    for (int i = 0; i < k; ++i) acc = acc * w;
    return acc;
  };
  for (int k : {1, 2, 3}) {
    for (int rep = 0; rep < 5; ++rep) {
      Complex z = random_safe_point(p);
      auto [f1, s1] = projected_power(z, k, 1, p);
      auto [f2, s2] = projected_power(z, k, 2, p);
      Mat2 sum = f1 * s1.value() + f2 * s2.value();
      Mat2 direct = wpow(z, k);
      CHECK((sum - direct).max_abs() < 1e-9 * std::max(1.0, direct.max_abs()));
    }
  }
  // k = 0 gives the projector and scalar one
  Complex z = random_safe_point(p);
  auto [f, s] = projected_power(z, 0, 1, p);
  CHECK((f - symbol_F(z, p)).max_abs() < 1e-14);
  CHECK(s.log_magnitude == 0.0);
  // log magnitude is exactly k ln|lambda|
  auto sv = lambda_power(z, 37, 1, p);
  CHECK(std::abs(sv.log_magnitude - 37.0 * std::log(std::abs(lambda({z, 1}, p)))) < 1e-9);
}

TEST_CASE("matrix_power_scaled matches small direct powers") {
  WeightParams p(1.5);
  Complex z = random_safe_point(p);
  Mat2 a = symbol_A(z, p);
  Mat2 direct = a * a * a;
  auto [m, s] = matrix_power_scaled(a, 3);
  CHECK((m * s.value() - direct).max_abs() < 1e-12 * std::max(1.0, direct.max_abs()));
  auto [mi, si] = matrix_power_scaled(a, -2);
  Mat2 inv2 = (a * a).inverse();
  CHECK((mi * si.value() - inv2).max_abs() < 1e-12 * std::max(1.0, inv2.max_abs()));
}

TEST_CASE("invariant suite at 1000 random points") {
  for (double alpha : {1.2, 2.0, 5.0}) {
    WeightParams p(alpha);
    for (int k = 0; k < 1000; ++k) {
      Complex z = random_safe_point(p);
      Mat2 a = symbol_A(z, p);
      Mat2 w = weight_W(z, p);
      Mat2 f = symbol_F(z, p);
      double scale = std::max({1.0, a.max_abs(), w.max_abs(), f.max_abs()});
      CHECK(std::abs(a.det() + z) < 1e-10 * scale);
      CHECK(std::abs(w.det() - 1.0) < 1e-10 * scale);
      CHECK(std::abs(lambda({z, 1}, p) * lambda({z, 2}, p) - 1.0) < 1e-10);
      CHECK((f * f - f).max_abs() < 1e-10 * scale);
      CHECK((f * a - a * f).max_abs() < 1e-10 * scale);
      CHECK(std::abs(lambda({z, 1}, p)) > std::abs(lambda({z, 2}, p)));
    }
  }
}

TEST_CASE("double precision agrees with 50-digit evaluation") {
  using C50 = boost::multiprecision::cpp_complex_50;
  WeightParams p(2.0);
  for (int k = 0; k < 25; ++k) {
    Complex z = random_safe_point(p);
    C50 z50(z.real(), z.imag());
    C50 y50 = alg::sqrt_surface_raw(z50, p.alpha2(), p.beta2());
    Complex y = sqrt_surface(z, p);
    double dy = std::abs(Complex(double(y50.real()) - y.real(), double(y50.imag()) - y.imag()));
    CHECK(dy < 1e-12 * std::max(1.0, std::abs(y)));
    C50 l50 = alg::lambda_raw(z50, 1, p.alpha, p.beta);
    Complex l = lambda({z, 1}, p);
    double dl = std::abs(Complex(double(l50.real()) - l.real(), double(l50.imag()) - l.imag()));
    CHECK(dl < 1e-11 * std::max(1.0, std::abs(l)));
  }
}

TEST_CASE("weight params invariants") {
  WeightParams p(2.0);
  CHECK(p.alpha * p.beta == 1.0);
  CHECK(p.xi2_star == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(p.c0 == doctest::Approx(2.5 / std::sqrt(2.0)));
  CHECK(p.c1 == doctest::Approx(std::pow(2.0, 0.25) / std::sqrt(1.5)));
  CHECK(p.c2 == doctest::Approx(std::sqrt(2.0) / 2.5));
  CHECK_THROWS_AS(WeightParams(0.8), InvalidInput);
  WeightParams trivial(1.0);
  CHECK(trivial.degenerate());
}
