#include "aztec/asymptotics.hpp"

namespace aztec {

namespace {

// Piecewise s-contour Sigma u (+-Sigma) and the vertical t-line.
PiecewisePath sigma_contour(double R, double join, bool reverse_minus) {
  double d = R / std::sqrt(2.0);
  PiecewisePath p;
  // Sigma: from R e^{-i pi/4} up through the Re = +join segment to R e^{+i pi/4}
  p.pieces.push_back(PathPiece::line({d, -d}, {join, -join}));
  p.pieces.push_back(PathPiece::line({join, -join}, {join, join}));
  p.pieces.push_back(PathPiece::line({join, join}, {d, d}));
  // -Sigma: the point reflection, traversed downward unless reversed
  std::vector<PathPiece> minus;
  minus.push_back(PathPiece::line({-d, d}, {-join, join}));
  minus.push_back(PathPiece::line({-join, join}, {-join, -join}));
  minus.push_back(PathPiece::line({-join, -join}, {-d, -d}));
  if (reverse_minus) {
    std::reverse(minus.begin(), minus.end());
    for (auto& piece : minus) std::swap(piece.a, piece.b);
  }
  for (auto& piece : minus) p.pieces.push_back(piece);
  return p;
}

Complex pearcey_eval(double u, double v, double up, double vp, bool reverse_minus,
                     const PearceyOptions& opts, int panels) {
  PiecewisePath spath = sigma_contour(opts.truncation_radius, opts.join, reverse_minus);
  PiecewisePath tpath;
  tpath.pieces.push_back(
      PathPiece::line({0.0, -opts.truncation_radius}, {0.0, opts.truncation_radius}));

  ContourNodes sn = path_nodes(spath, 12, panels);
  ContourNodes tn = path_nodes(tpath, 12, 6 * panels);

  // path_nodes folds 1/(2pi i) into each weight, giving the (2pi i)^2 norm.
  std::vector<Complex> es(sn.z.size()), et(tn.z.size());
  for (size_t i = 0; i < sn.z.size(); ++i) {
    Complex s = sn.z[i];
    es[i] = std::exp(0.25 * s * s * s * s + 0.5 * v * s * s + u * s) * sn.w[i];
  }
  for (size_t j = 0; j < tn.z.size(); ++j) {
    Complex t = tn.z[j];
    et[j] = std::exp(-(0.25 * t * t * t * t + 0.5 * vp * t * t + up * t)) * tn.w[j];
  }
  Complex total = 0.0;
  for (size_t i = 0; i < sn.z.size(); ++i) {
    Complex row = 0.0;
    for (size_t j = 0; j < tn.z.size(); ++j) {
      Complex den = tn.z[j] - sn.z[i];
      if (std::abs(den) < 1e-3)
        throw ConvergenceError("pearcey_double: s and t contours collide");
      row += et[j] / den;
    }
    total += es[i] * row;
  }
  return total;
}

}  // namespace

Complex pearcey_double(double u, double v, double up, double vp, PearceyOrientation orient,
                       const PearceyOptions& opts) {
  if (opts.truncation_radius < 6.0)
    throw InvalidInput("pearcey_double: truncation radius must be >= 6");
  bool reverse_minus = orient == PearceyOrientation::Odd;
  int panels = 4;
  Complex prev = pearcey_eval(u, v, up, vp, reverse_minus, opts, panels);
  for (int iter = 0; iter < 8; ++iter) {
    panels *= 2;
    Complex cur = pearcey_eval(u, v, up, vp, reverse_minus, opts, panels);
    double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
    if (std::abs(cur - prev) < opts.quad.rel_tol * scale) return cur;
    prev = cur;
  }
  throw ConvergenceError("pearcey_double: no convergence");
}

Mat2 gaussian_limit(double u, double v, double up, double vp, const WeightParams& p) {
  if (v == vp && u == up)
    throw DomainError("gaussian_limit: the equal-argument case is not defined");
  Mat2 F0(1.0, 1.0, -1.0, -1.0);
  if (v < vp || (v == vp && u != up)) return Mat2::zero();
  double pref = std::sqrt(p.alpha - p.beta) / std::pow(2.0, 0.25);
  double g = std::exp(-(u - up) * (u - up) / (2.0 * (v - vp))) /
             std::sqrt(2.0 * kPi * (v - vp));
  return F0 * (pref * g);
}

namespace {

int round_with_parity(double target, int parity) {
  int r = static_cast<int>(std::lround(target));
  if (((r % 2) + 2) % 2 == parity) return r;
  return (target >= r) ? r + 1 : r - 1;
}

}  // namespace

CuspCoordinates cusp_sites(const WeightParams& p, int N, double u, double v, double up,
                           double vp) {
  if (N % 2 != 0 || N <= 0) throw InvalidInput("cusp_sites: N must be a positive even integer");
  if (p.degenerate()) throw InvalidInput("cusp_sites: requires alpha > 1");
  CuspCoordinates c;
  c.N = N;
  double n34 = std::pow(double(N), 0.75), n12 = std::sqrt(double(N));
  double xi1 = p.c1 * u / n34, xi2 = p.xi2_star + p.c2 * v / n12;
  double xi1p = p.c1 * up / n34, xi2p = p.xi2_star + p.c2 * vp / n12;
  c.m = round_with_parity((1.0 + xi1) * N, 0);   // even-level branch
  c.n = round_with_parity((1.0 + xi2) * N, 0);   // m + n even
  c.mp = round_with_parity((1.0 + xi1p) * N, 0);
  c.np = round_with_parity((1.0 + xi2p) * N, 0);
  c.u_eff = (double(c.m) / N - 1.0) * n34 / p.c1;
  c.v_eff = (double(c.n) / N - 1.0 - p.xi2_star) * n12 / p.c2;
  c.up_eff = (double(c.mp) / N - 1.0) * n34 / p.c1;
  c.vp_eff = (double(c.np) / N - 1.0 - p.xi2_star) * n12 / p.c2;
  c.round_offset = std::max({std::abs(c.m - (1.0 + xi1) * N), std::abs(c.n - (1.0 + xi2) * N),
                             std::abs(c.mp - (1.0 + xi1p) * N),
                             std::abs(c.np - (1.0 + xi2p) * N)});
  return c;
}

Mat2 cusp_scaled_difference(const WeightParams& p, const CuspCoordinates& c,
                            const KernelOptions& opts) {
  int dm = c.mp - c.m, dn = c.np - c.n;
  if ((dn - dm) % 2 != 0) throw InvalidInput("cusp_scaled_difference: parity violation");
  Mat2 rem = kernel_gas_remainder(p, c.N, {c.m, c.n}, {c.mp, c.np}, opts);
  double sign = ((dn - dm) / 2) % 2 == 0 ? 1.0 : -1.0;
  double scale = std::pow(double(c.N), 0.25) * sign * std::pow(p.alpha, -double(dn));
  return rem * scale;
}

Mat2 pearcey_rhs(const WeightParams& p, const CuspCoordinates& c, const PearceyOptions& opts) {
  PearceyOrientation orient =
      (c.m % 2 == 0) ? PearceyOrientation::Even : PearceyOrientation::Odd;
  Complex P = pearcey_double(c.u_eff, c.v_eff, c.up_eff, c.vp_eff, orient, opts);
  Mat2 F0(1.0, 1.0, -1.0, -1.0);
  return F0 * (std::sqrt(p.alpha - p.beta) / std::pow(2.0, 0.25) * P);
}

Mat2 gas_scaled(const WeightParams& p, const CuspCoordinates& c, const KernelOptions& opts) {
  int dm = c.mp - c.m, dn = c.np - c.n;
  Mat2 gas = gas_block(p, {dm, dn}, opts);
  int e = (dn - std::abs(dm)) / 2;
  double sign = (e % 2 == 0) ? 1.0 : -1.0;
  double scale = std::pow(double(c.N), 0.25) * sign * std::pow(p.alpha, -double(dn));
  return gas * scale;
}

double offspan_norm(const Mat2& M) {
  Mat2 F0(1.0, 1.0, -1.0, -1.0);
  Complex coeff = 0.0;
  for (int i = 0; i < 4; ++i) coeff += M.m[i] * std::conj(F0.m[i]);
  coeff /= 4.0;  // <F0, F0> = 4
  Mat2 resid = M - F0 * coeff;
  return resid.frob();
}

DecayReport gas_convergence_study(const WeightParams& p, PhasePoint pp,
                                  const std::vector<int>& Ns, const KernelOptions& opts) {
  DecayReport rep;
  for (int N : Ns) {
    if (N % 2 != 0) throw InvalidInput("gas_convergence_study: N must be even");
    int m = round_with_parity((1.0 + pp.xi1) * N, 0);
    int n = round_with_parity((1.0 + pp.xi2) * N, 0);
    Mat2 rem = kernel_gas_remainder(p, N, {m, n}, {m, n}, opts);
    rep.Ns.push_back(N);
    rep.norms.push_back(rem.max_abs());
  }
  // least-squares fit of log(norm) against N
  size_t k = rep.Ns.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < k; ++i) {
    double x = rep.Ns[i], y = std::log(std::max(rep.norms[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  double n = double(k);
  double denom = n * sxx - sx * sx;
  rep.slope = (n * sxy - sx * sy) / denom;
  double ss_tot = syy - sy * sy / n;
  double intercept = (sy - rep.slope * sx) / n;
  double ss_res = 0;
  for (size_t i = 0; i < k; ++i) {
    double y = std::log(std::max(rep.norms[i], 1e-300));
    double f = intercept + rep.slope * rep.Ns[i];
    ss_res += (y - f) * (y - f);
  }
  rep.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return rep;
}

}  // namespace aztec
