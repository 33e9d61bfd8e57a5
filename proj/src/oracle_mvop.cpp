#include "aztec/oracle.hpp"

namespace aztec::oracle {

namespace {

// Orthogonality residuals and Taylor estimates integrate analytic functions
// whose exact value is zero; convergence is reached at the noise floor.
QuadratureSpec zero_target(const QuadratureSpec& spec) {
  QuadratureSpec s = spec;
  s.noise_floor = std::max(s.noise_floor, 1e-12);
  return s;
}

// W_inf^{k} for the unipotent limit matrix W_inf = lim W(z). The (2,1)
// entry is 2 beta (alpha+beta): the limit of 2 beta (alpha+beta) z(z+1)/(z-1)^2,
// which is also what monicity of P_N requires.
Mat2 winf_power(const WeightParams& p, long long k) {
  return Mat2(1.0, 0.0, 2.0 * double(k) * p.beta * (p.alpha + p.beta), 1.0);
}

}  // namespace

Eigen::MatrixXcd gram_matrix(const WeightParams& p, int N, const QuadratureSpec& spec) {
  CircleContour c(Complex(0.0, 0.0), 2.0, +1);
  // block Toeplitz: only the 2N-1 distinct offsets are integrated
  std::vector<Mat2> blocks(2 * N - 1);
  for (int d = -(N - 1); d <= N - 1; ++d) {
    auto f = [&](Complex z) -> Mat2 {
      auto [M, s] = matrix_power_scaled(symbol_A(z, p), 2 * N);
      return M * (s * complex_power(z, d - 1)).value();
    };
    blocks[d + N - 1] = integrate_circle(f, c, spec);
  }
  Eigen::MatrixXcd G(2 * N, 2 * N);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      const Mat2& b = blocks[(x - y) + N - 1];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) G(2 * x + i, 2 * y + j) = b(i, j);
    }
  return G;
}

Mat2 reproducing_kernel(const Eigen::MatrixXcd& Ginv, int N, Complex w, Complex z) {
  Mat2 out = Mat2::zero();
  for (int x = 0; x < N; ++x) {
    Complex wp = std::pow(w, N - 1 - x);
    for (int y = 0; y < N; ++y) {
      Complex zp = std::pow(z, y);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          out(i, j) += wp * zp * Ginv(2 * x + i, 2 * y + j);
    }
  }
  return out;
}

Mat2 reproducing_residual(const WeightParams& p, const Eigen::MatrixXcd& Ginv, int N,
                          Complex w, const Mat2& Q, const QuadratureSpec& spec) {
  CircleContour c(Complex(0.0, 0.0), 2.0, +1);
  Mat2 Qt(Q(0, 0), Q(1, 0), Q(0, 1), Q(1, 1));
  auto f = [&](Complex z) -> Mat2 {
    // W^N(z) = A^{2N}(z) / z^N
    auto [M, s] = matrix_power_scaled(symbol_A(z, p), 2 * N);
    Mat2 WN = M * (s * complex_power(z, -static_cast<long long>(N))).value();
    return reproducing_kernel(Ginv, N, w, z) * WN * Qt;
  };
  return integrate_circle(f, c, zero_target(spec)) - Qt;
}

KernelBlock kernel_block_via_reproducing(const WeightParams& p, int N, BlackSite a,
                                         BlackSite b, const KernelOptions& opts) {
  if ((a.m + a.n) % 2 != 0 || (b.m + b.n) % 2 != 0)
    throw InvalidInput("reproducing route: m+n and m'+n' must be even");
  const int m = a.m, n = a.n, mp = b.m, np = b.n;
  const long long x = (static_cast<long long>(m) + n) / 2;
  const long long y = (static_cast<long long>(mp) + np) / 2;

  Eigen::MatrixXcd G = gram_matrix(p, N, opts.quad);
  Eigen::MatrixXcd Ginv = G.fullPivLu().inverse();

  CircleContour cz(Complex(0.0, 0.0), 2.0, +1);
  CircleContour cw(Complex(0.0, 0.0), 3.0, +1);

  Mat2 single = Mat2::zero();
  if (m > mp) {
    auto f = [&](Complex z) -> Mat2 {
      auto [M, s] = matrix_power_scaled(symbol_A(z, p), m - mp);
      return M * (s * complex_power(z, y - x - 1)).value();
    };
    single = integrate_circle(f, cz, opts.quad);
  }

  struct Ctx {
    Mat2 M;
    ScaledValue s;
  };
  auto prep_z = [&](Complex z) -> Ctx {
    auto [M, s] = matrix_power_scaled(symbol_A(z, p), m);
    return {M, s * complex_power(z, -x - 1)};
  };
  auto prep_w = [&](Complex w) -> Ctx {
    auto [M, s] = matrix_power_scaled(symbol_A(w, p), 2 * N - mp);
    return {M, s * complex_power(w, y - N)};
  };
  auto combine = [&](const Ctx& zc, const Ctx& wc, Complex z, Complex w) -> Mat2 {
    // A^{2N-m'}(w) R_N(w,z) A^m(z) w^{y-N} z^{-x-1}; contours independent
    return wc.M * reproducing_kernel(Ginv, N, w, z) * zc.M * (zc.s * wc.s).value();
  };
  Mat2 dbl = integrate_double_ctx<Ctx, Ctx>(prep_z, prep_w, combine,
                                            as_double_contour(cz, opts.quad),
                                            as_double_contour(cw, opts.quad), opts.quad,
                                            /*min_separation=*/0.0);
  KernelBlock out;
  out.block = (dbl - single).real_part();
  out.imag_residual = (dbl - single).max_abs_imag();
  out.m = m;
  out.n = n;
  out.mp = mp;
  out.np = np;
  return out;
}

Mat2 mvop_PN(const WeightParams& p, int N, Complex z) {
  if (N % 2 != 0) throw InvalidInput("mvop_PN: N must be even");
  if (std::abs(z - 1.0) < 1e-12) throw DomainError("mvop_PN: removable singularity at z = 1");
  auto [M, s] = matrix_power_scaled(weight_W(z, p), -static_cast<long long>(N) / 2);
  Complex c = (s * complex_power(z - 1.0, N)).value();
  return winf_power(p, N / 2) * M * c;
}

Mat2 mvop_orthogonality(const WeightParams& p, int N, int k, const QuadratureSpec& spec) {
  CircleContour g1(Complex(1.0, 0.0), 0.5, +1);
  // P_N(z) W^N(z) = (z-1)^N W_inf^{N/2} W^{N/2}(z); the folded form avoids
  // the W^{-N/2} W^N cancellation entirely
  Mat2 pref = winf_power(p, N / 2);
  auto f = [&](Complex z) -> Mat2 {
    auto [M, s] = matrix_power_scaled(weight_W(z, p), N / 2);
    Complex c = (s * complex_power(z - 1.0, N) * complex_power(z, k)).value();
    return pref * M * c;
  };
  return integrate_circle(f, g1, zero_target(spec));
}

Mat2 rh_cauchy_block(const WeightParams& p, int N, Complex z, double r_deform,
                     const QuadratureSpec& spec) {
  CircleContour c(Complex(1.0, 0.0), r_deform, +1);
  auto f = [&](Complex s) -> Mat2 {
    Complex den = (complex_power(s - 1.0, -2LL * N)).value() / (s - z);
    return symbol_F(s, p) * den;
  };
  return integrate_circle(f, c, spec);
}

Mat2 mvop_QNminus1(const WeightParams& p, int N, Complex z, const QuadratureSpec& spec) {
  if (N % 2 != 0) throw InvalidInput("mvop_QNminus1: N must be even");
  const double r = 0.4;
  if (std::abs(z - 1.0) <= r + 1e-3)
    throw DomainError("mvop_QNminus1: outside representation needs |z-1| > r");
  Mat2 cauchy = rh_cauchy_block(p, N, z, r, spec);
  auto [M, s] = matrix_power_scaled(weight_W(z, p), -static_cast<long long>(N) / 2);
  Complex c = (s * complex_power(z - 1.0, N)).value();
  return winf_power(p, -N / 2) * cauchy * M * c;
}

Mat2 qn_orthogonality(const WeightParams& p, int N, int k, const QuadratureSpec& spec) {
  CircleContour g(Complex(1.0, 0.0), 0.7, +1);
  // Q_{N-1}(z) W^N(z) = (z-1)^N W_inf^{-N/2} C(z) W^{N/2}(z) with C the
  // Cauchy block; same folding as in mvop_orthogonality
  Mat2 pref = winf_power(p, -N / 2);
  auto f = [&](Complex z) -> Mat2 {
    Mat2 cauchy = rh_cauchy_block(p, N, z, 0.4, spec);
    auto [M, s] = matrix_power_scaled(weight_W(z, p), N / 2);
    Complex c = (s * complex_power(z - 1.0, N) * complex_power(z, k)).value();
    return pref * cauchy * M * c;
  };
  return integrate_circle(f, g, zero_target(spec));
}

Mat2 taylor_coefficient(const std::function<Mat2(Complex)>& f, Complex z0, double radius,
                        int order, const QuadratureSpec& spec) {
  CircleContour c(z0, radius, +1);
  auto g = [&](Complex z) -> Mat2 {
    return f(z) * complex_power(z - z0, -(order + 1LL)).value();
  };
  return integrate_circle(g, c, zero_target(spec));
}

Eigen::Matrix4cd rh_solution_S(const WeightParams& p, int N, Complex z,
                               const QuadratureSpec& spec) {
  const double r = 0.5;
  if (std::abs(std::abs(z - 1.0) - r) < 1e-3)
    throw DomainError("rh_solution_S: z within 1e-3 of gamma_1");
  Mat2 B = rh_cauchy_block(p, N, z, r, spec);
  Eigen::Matrix4cd S = Eigen::Matrix4cd::Identity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) S(2 + i, j) = B(i, j);
  return S;
}

}  // namespace aztec::oracle
