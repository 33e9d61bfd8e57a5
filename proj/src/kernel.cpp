#include "aztec/kernel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <tuple>

namespace aztec {

namespace {

void require_even_pair(int s, const char* what) {
  if (s % 2 != 0) throw InvalidInput(std::string(what) + " must be even");
}

void require_N(int N) {
  if (N <= 0 || N % 2 != 0) throw InvalidInput("N must be a positive even integer");
}

Mat2 finish_block(Mat2 total, int m, int n, int mp, int np, KernelBlock& out) {
  out.block = total.real_part();
  out.imag_residual = total.max_abs_imag();
  out.m = m;
  out.n = n;
  out.mp = mp;
  out.np = np;
  return total;
}

// Inverse of the geometric half-step symbol: (z -1; -z z)/z.
Mat2 half_step_geometric_inv(Complex z) {
  if (std::abs(z) < 1e-14) throw DomainError("half-step inverse: z = 0");
  return Mat2(1.0, -1.0 / z, -1.0, 1.0);
}

}  // namespace

CircleContour default_gamma1(const KernelOptions& opts) {
  return CircleContour(Complex(1.0, 0.0), opts.gamma1_radius, +1);
}

CircleContour default_gamma01(const WeightParams& p, const KernelOptions& opts) {
  double r = opts.gamma01_radius;
  if (r == 0.0) {
    // enclose 0, 1 and gamma_1 with separation, clipped against the left cut
    r = std::min(2.0, 0.5 + 0.9 * p.alpha2());
    r = std::max(r, 1.0 + 2.0 * opts.separation_guard + 0.2);
  }
  return CircleContour(Complex(0.5, 0.0), r, +1);
}

KernelBlock kernel_block(const WeightParams& p, int N, BlackSite a, BlackSite b,
                         const KernelOptions& opts) {
  require_N(N);
  require_even_pair(a.m + a.n, "m+n");
  require_even_pair(b.m + b.n, "m'+n'");
  if (a.m < 0 || a.m > 2 * N || b.m < 0 || b.m > 2 * N)
    throw InvalidInput("kernel_block: level out of [0, 2N]");
  const int m = a.m, n = a.n, mp = b.m, np = b.n;

  CircleContour g1 = default_gamma1(opts);
  CircleContour g01 = default_gamma01(p, opts);

  Mat2 single = Mat2::zero();
  if (m > mp) {
    long long q = (static_cast<long long>(mp) + np - m - n) / 2;
    auto f = [&](Complex z) -> Mat2 {
      auto [M, s] = matrix_power_scaled(symbol_A(z, p), m - mp);
      return M * (s * complex_power(z, q - 1)).value();
    };
    single = integrate_circle(f, g01, opts.quad);
  }

  struct ZCtx {
    Mat2 M;
    ScaledValue s;
  };
  struct WCtx {
    Mat2 FW;
    ScaledValue s;
  };
  auto prep_z = [&](Complex z) -> ZCtx {
    auto [M, s] = matrix_power_scaled(symbol_A(z, p), static_cast<long long>(m) - N);
    ScaledValue sc = s * complex_power(z, (static_cast<long long>(N) - m - n) / 2) *
                     complex_power(z - 1.0, N);
    return {M, sc};
  };
  auto prep_w = [&](Complex w) -> WCtx {
    // A^{N-m'}(w) F(w) w^{(m'+n')/2} / (w^{N/2} (w-1)^N)
    //   = F(w) rho_1(w)^{N-m'} (w-1)^{m'-2N} w^{(m'+n'-N)/2}
    ScaledValue sw = rho_power(w, static_cast<long long>(N) - mp, 1, p) *
                     complex_power(w - 1.0, static_cast<long long>(mp) - 2 * N) *
                     complex_power(w, (static_cast<long long>(mp) + np - N) / 2);
    return {symbol_F(w, p), sw};
  };
  auto combine = [&](const ZCtx& zc, const WCtx& wc, Complex z, Complex w) -> Mat2 {
    Complex c = (zc.s * wc.s).value() / (z * (z - w));
    return (wc.FW * zc.M) * c;
  };
  Mat2 dbl = integrate_double_ctx<ZCtx, WCtx>(prep_z, prep_w, combine,
                                              as_double_contour(g01, opts.quad),
                                              as_double_contour(g1, opts.quad), opts.quad,
                                              opts.separation_guard);
  KernelBlock out;
  finish_block(dbl - single, m, n, mp, np, out);
  return out;
}

namespace {

// A_{from,to}(z) over half-integer levels (doubled coordinates).
Mat2 A_interval(Complex z, int twofrom, int twoto, const WeightParams& p) {
  if (twofrom == twoto) return Mat2::identity();
  bool invert = twofrom > twoto;
  if (invert) std::swap(twofrom, twoto);
  Mat2 prod = Mat2::identity();
  for (int t = twofrom; t < twoto; ++t)
    prod = prod * (t % 2 == 0 ? half_step_bernoulli(z, p) : half_step_geometric(z, p));
  return invert ? prod.inverse() : prod;
}

}  // namespace

KernelBlock kernel_block_extended(const WeightParams& p, int N, HalfSite a, HalfSite b,
                                  const KernelOptions& opts) {
  require_N(N);
  if ((a.twom + a.twon) % 2 != 0 || (b.twom + b.twon) % 2 != 0)
    throw InvalidInput("extended kernel: site coordinates must share parity");
  if ((a.twom + a.twon) % 4 != 0 || (b.twom + b.twon) % 4 != 0)
    throw InvalidInput("extended kernel: m+n and m'+n' must be even");
  if (a.twom < 0 || a.twom > 4 * N || b.twom < 0 || b.twom > 4 * N)
    throw InvalidInput("extended kernel: level out of range");

  CircleContour g1 = default_gamma1(opts);
  CircleContour g01 = default_gamma01(p, opts);

  Mat2 single = Mat2::zero();
  if (a.twom > b.twom) {
    long long q = (static_cast<long long>(b.twom) + b.twon - a.twom - a.twon) / 4;
    auto f = [&](Complex z) -> Mat2 {
      return A_interval(z, b.twom, a.twom, p) * (complex_power(z, q - 1)).value();
    };
    single = integrate_circle(f, g01, opts.quad);
  }

  struct Ctx {
    Mat2 M;
    ScaledValue s;
  };
  auto prep_z = [&](Complex z) -> Ctx {
    // A_{N,m}(z) z^{N/2} (z-1)^N z^{-(m+n)/2}
    long long zpow = static_cast<long long>(N) / 2 - (a.twom + a.twon) / 4;
    if (a.twom % 2 == 0) {
      auto [M, s] = matrix_power_scaled(symbol_A(z, p), static_cast<long long>(a.twom) / 2 - N);
      return {M, s * complex_power(z, zpow) * complex_power(z - 1.0, N)};
    }
    int k = (a.twom - 1) / 2;  // m = k + 1/2
    auto [M, s] = matrix_power_scaled(symbol_A(z, p), static_cast<long long>(k) + 1 - N);
    Mat2 Mz = M * half_step_geometric_inv(z);
    return {Mz, s * complex_power(z, zpow) * complex_power(z - 1.0, N)};
  };
  auto prep_w = [&](Complex w) -> Ctx {
    // A_{m',N}(w) F(w) w^{(m'+n')/2} / (w^{N/2} (w-1)^N)
    long long sum4 = (b.twom + b.twon) / 4;
    if (b.twom % 2 == 0) {
      int mp = b.twom / 2;
      ScaledValue sw = rho_power(w, static_cast<long long>(N) - mp, 1, p) *
                       complex_power(w - 1.0, static_cast<long long>(mp) - 2 * N) *
                       complex_power(w, sum4 - N / 2);
      return {symbol_F(w, p), sw};
    }
    int k = (b.twom - 1) / 2;  // m' = k + 1/2
    ScaledValue sw = rho_power(w, static_cast<long long>(N) - k - 1, 1, p) *
                     complex_power(w - 1.0, static_cast<long long>(k) + 1 - 2 * N) *
                     complex_power(w, sum4 - N / 2);
    return {half_step_geometric(w, p) * symbol_F(w, p), sw};
  };
  auto combine = [&](const Ctx& zc, const Ctx& wc, Complex z, Complex w) -> Mat2 {
    Complex c = (zc.s * wc.s).value() / (z * (z - w));
    return (wc.M * zc.M) * c;
  };
  Mat2 dbl = integrate_double_ctx<Ctx, Ctx>(prep_z, prep_w, combine,
                                            as_double_contour(g01, opts.quad),
                                            as_double_contour(g1, opts.quad), opts.quad,
                                            opts.separation_guard);
  KernelBlock out;
  finish_block(dbl - single, a.twom, a.twon, b.twom, b.twon, out);
  return out;
}

namespace {

struct StableGeometry {
  CircleContour zc;
  PiecewisePath wpath;
};

StableGeometry stable_geometry(const WeightParams& p, int N, int n, int np,
                               const QuadratureSpec& spec) {
  double a2 = p.alpha2(), b2 = p.beta2();
  double gap = a2 - b2;
  double xi2eff = 0.5 * (n + np) / N - 1.0;
  double zc_raw;
  if (xi2eff >= 1.0 - 1e-12)
    zc_raw = -1e18;
  else
    zc_raw = -(1.0 + xi2eff) / (1.0 - xi2eff);
  double zleft = std::clamp(zc_raw, -a2 + 0.08 * gap, -b2 - 0.08 * gap);
  // node phase keeps quadrature nodes off z = 1, where the stabilized
  // integrand degenerates in its factored log representation
  CircleContour zc(Complex(0.5 * (1.0 + zleft), 0.0), 0.5 * (1.0 - zleft), +1, 0.2347);

  double cap = std::min(1e-2, 0.05 * gap);
  // Truncation from the algebraic tail: the w-integrand (projector included)
  // is O(w^{(np-2N+1)/2}) and the 1/(z-w) factor adds one more power; a
  // geometric piece ladder keeps the node count logarithmic in |T|.
  double pdecay = 0.5 * (np - 2 * N - 1);
  double t_over = std::pow(std::max(spec.rel_tol * 0.1, 1e-16), 1.0 / (pdecay + 1.0));
  double T = -a2 * std::max(8.0, 2.0 * t_over);
  T = std::max(T, -1e60);
  PiecewisePath wpath = left_cut_wrap(p, cap, cap, T);
  PiecewisePath right = right_cut_wrap(p, cap, cap);
  for (auto& piece : right.pieces) wpath.pieces.push_back(piece);
  return {zc, wpath};
}

Mat2 stable_remainder(const WeightParams& p, int N, BlackSite a, BlackSite b,
                      const KernelOptions& opts) {
  const int m = a.m, n = a.n, mp = b.m, np = b.n;
  StableGeometry geo = stable_geometry(p, N, n, np, opts.quad);

  struct ZCtx {
    Mat2 F;
    ScaledValue s1, s2;
  };
  struct WCtx {
    Mat2 F;
    ScaledValue s;
  };
  auto prep_z = [&](Complex z) -> ZCtx {
    // e^{N Phi_j(z)/2} = rho_j(z)^{m-N} (z-1)^{2N-m} z^{(N-m-n)/2}
    ScaledValue tail = complex_power(z - 1.0, 2 * N - m) *
                       complex_power(z, (static_cast<long long>(N) - m - n) / 2);
    return {symbol_F(z, p), rho_power(z, m - N, 1, p) * tail,
            rho_power(z, m - N, 2, p) * tail};
  };
  auto prep_w = [&](Complex w) -> WCtx {
    // e^{-N Phi_1(w)/2} = rho_1(w)^{N-m'} (w-1)^{m'-2N} w^{(n'+m'-N)/2}
    ScaledValue sw = rho_power(w, static_cast<long long>(N) - mp, 1, p) *
                     complex_power(w - 1.0, static_cast<long long>(mp) - 2 * N) *
                     complex_power(w, (static_cast<long long>(mp) + np - N) / 2);
    return {symbol_F(w, p), sw};
  };
  Mat2 id = Mat2::identity();
  auto combine = [&](const ZCtx& zc, const WCtx& wc, Complex z, Complex w) -> Mat2 {
    Complex c1 = (zc.s1 * wc.s).value();
    Complex c2 = (zc.s2 * wc.s).value();
    Mat2 res = (wc.F * zc.F) * c1 + (wc.F * (id - zc.F)) * c2;
    return res * (1.0 / (z * (z - w)));
  };
  return integrate_double_ctx<ZCtx, WCtx>(prep_z, prep_w, combine,
                                          as_double_contour(geo.zc, opts.quad),
                                          as_double_contour(geo.wpath, opts.quad), opts.quad,
                                          opts.separation_guard);
}

}  // namespace

Mat2 kernel_gas_remainder(const WeightParams& p, int N, BlackSite a, BlackSite b,
                          const KernelOptions& opts) {
  require_N(N);
  require_even_pair(a.m + a.n, "m+n");
  require_even_pair(b.m + b.n, "m'+n'");
  // n' <= 2N-2 keeps the w-integrand O(w^{-3/2}); at n' = 2N-1 the arc at
  // infinity no longer vanishes and the contour deformation breaks down.
  if (b.n > 2 * N - 2)
    throw InvalidInput("stabilized kernel requires n' <= 2N-2");
  if (a.m < 0 || a.m > 2 * N || b.m < 0 || b.m > 2 * N)
    throw InvalidInput("kernel level out of [0, 2N]");
  return stable_remainder(p, N, a, b, opts);
}

KernelBlock kernel_block_stable(const WeightParams& p, int N, BlackSite a, BlackSite b,
                                const KernelOptions& opts) {
  Mat2 rem = kernel_gas_remainder(p, N, a, b, opts);
  Mat2 gas = gas_block(p, {b.m - a.m, b.n - a.n}, opts);
  KernelBlock out;
  finish_block(gas + rem, a.m, a.n, b.m, b.n, out);
  return out;
}

Mat2 gas_block(const WeightParams& p, GasOffsets off, const KernelOptions& opts) {
  if ((off.dm + off.dn) % 2 != 0)
    throw InvalidInput("gas_block: dm + dn must be even");
  if (p.degenerate()) {
    // alpha = beta = 1: the two cuts merge and the contour degenerates;
    // only the diagonal survives as a limit (density 1/2).
    if (off.dm == 0 && off.dn == 0) return Mat2(0.5, 0.0, 0.0, 0.5);
    throw DomainError("gas_block: alpha = 1 supported on the diagonal only");
  }
  // |z| = r with r < 1 for dn >= 0 and r > 1 for dn < 0; the integrand is
  // analytic in the annulus beta^2 < |z| < alpha^2, so any admissible radius
  // gives the same value, the default just optimizes decay.
  double r = off.dn >= 0 ? 0.5 * (p.beta2() + 1.0) : 0.5 * (1.0 + p.alpha2());
  if (opts.gas_radius != 0.0) {
    r = opts.gas_radius;
    if (!(r > p.beta2() && r < p.alpha2()))
      throw InvalidInput("gas_block: radius must lie in (beta^2, alpha^2)");
  }
  CircleContour c(Complex(0.0, 0.0), r, +1);
  Mat2 id = Mat2::identity();
  auto f = [&](Complex z) -> Mat2 {
    long long q = (static_cast<long long>(off.dm) + off.dn) / 2;
    if (off.dm >= 0) {
      // F(z) A^{-dm}(z) z^{(dm+dn)/2 - 1} = F(z) rho1^{-dm} (z-1)^{dm} z^{q-1}
      ScaledValue s = rho_power(z, -off.dm, 1, p) * complex_power(z - 1.0, off.dm) *
                      complex_power(z, q - 1);
      return symbol_F(z, p) * s.value();
    }
    ScaledValue s = rho_power(z, -off.dm, 2, p) * complex_power(z - 1.0, off.dm) *
                    complex_power(z, q - 1);
    return (symbol_F(z, p) - id) * s.value();
  };
  return integrate_circle(f, c, opts.quad);
}

double gas_density(const WeightParams& p, int parity) {
  if (parity != 0 && parity != 1) throw InvalidInput("gas_density: parity must be 0 or 1");
  if (p.degenerate()) return 0.5;
  // (alpha-beta)/(2pi) * int_0^{beta^2} dt / sqrt(t (beta^2-t)(alpha^2-t)),
  // substituted t = beta^2 sin^2(theta) to remove the endpoint singularities.
  double a2 = p.alpha2(), b2 = p.beta2();
  auto g = [&](double th) {
    double s = std::sin(th);
    return 2.0 / std::sqrt(a2 - b2 * s * s);
  };
  // adaptive Gauss-Legendre doubling on [0, pi/2]
  auto integ = [&](int panels) {
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
      double t0 = 0.5 * kPi * k / panels, t1 = 0.5 * kPi * (k + 1) / panels;
      // 16-point Gauss-Legendre on [t0, t1]
      static const double gx[8] = {0.0950125098376374, 0.2816035507792589,
                                   0.4580167776572274, 0.6178762444026438,
                                   0.7554044083550030, 0.8656312023878318,
                                   0.9445750230732326, 0.9894009349916499};
      static const double gw[8] = {0.1894506104550685, 0.1826034150449236,
                                   0.1691565193950025, 0.1495959888165767,
                                   0.1246289712555339, 0.0951585116824928,
                                   0.0622535239386479, 0.0271524594117541};
      double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
      double acc = 0.0;
      for (int i = 0; i < 8; ++i) acc += gw[i] * (g(c + h * gx[i]) + g(c - h * gx[i]));
      total += acc * h;
    }
    return total;
  };
  double prev = integ(1), cur = integ(2);
  int panels = 2;
  while (std::abs(cur - prev) > 1e-14 * std::abs(cur) && panels < 4096) {
    panels *= 2;
    prev = cur;
    cur = integ(panels);
  }
  double corr = (p.alpha - p.beta) / (2.0 * kPi) * cur;
  return 0.5 + (parity == 0 ? corr : -corr);
}

namespace {

// The stabilized form is an exact rewrite of the plain kernel and stays
// fully conditioned at large level separations, where the plain form cancels
// through magnitudes of order |T^{m-m'}|. It needs the gas-kernel contour
// (absent at alpha = 1) and n' <= 2N-2; the remaining cases fall back to
// the plain form on slightly relaxed contours that keep the integrand
// magnitudes, and with them the attainable absolute accuracy, in check.
KernelBlock dispatch_block(const WeightParams& p, int N, BlackSite a, BlackSite b,
                           const KernelOptions& opts) {
  if (!p.degenerate() && b.n <= 2 * N - 2) return kernel_block_stable(p, N, a, b, opts);
  KernelOptions relaxed = opts;
  if (relaxed.gamma1_radius == 0.5) relaxed.gamma1_radius = 0.75;
  return kernel_block(p, N, a, b, relaxed);
}

}  // namespace

double kernel_entry(const WeightParams& p, int N, BlackSite x, BlackSite y,
                    const KernelOptions& opts) {
  require_N(N);
  auto in_range = [N](BlackSite s) {
    return s.m >= 0 && s.m <= 2 * N && s.n >= 0 && s.n <= 2 * N - 1;
  };
  if (!in_range(x) || !in_range(y)) throw InvalidInput("kernel_entry: site outside B_N");
  int nb = ((x.m + x.n) % 2 == 0) ? x.n : x.n - 1;
  int npb = ((y.m + y.n) % 2 == 0) ? y.n : y.n - 1;
  KernelBlock blk = dispatch_block(p, N, {x.m, nb}, {y.m, npb}, opts);
  return blk.entry(y.n - npb, x.n - nb);
}

double correlation_probability(const WeightParams& p, int N, const std::vector<BlackSite>& sites,
                               const KernelOptions& opts) {
  require_N(N);
  if (sites.size() > 8) throw InvalidInput("correlation_probability: at most 8 sites");
  for (size_t i = 0; i < sites.size(); ++i)
    for (size_t j = i + 1; j < sites.size(); ++j)
      if (sites[i].m == sites[j].m && sites[i].n == sites[j].n)
        throw InvalidInput("correlation_probability: duplicate sites");
  // block cache; each entry dispatches into one of at most |S|^2 blocks
  std::map<std::tuple<int, int, int, int>, KernelBlock> cache;
  auto entry = [&](BlackSite x, BlackSite y) {
    int nb = ((x.m + x.n) % 2 == 0) ? x.n : x.n - 1;
    int npb = ((y.m + y.n) % 2 == 0) ? y.n : y.n - 1;
    auto key = std::make_tuple(x.m, nb, y.m, npb);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, dispatch_block(p, N, {x.m, nb}, {y.m, npb}, opts)).first;
    return it->second.entry(y.n - npb, x.n - nb);
  };
  const int k = static_cast<int>(sites.size());
  Eigen::MatrixXd K(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) K(i, j) = entry(sites[i], sites[j]);
  return K.determinant();
}

}  // namespace aztec
