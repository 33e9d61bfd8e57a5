#include "aztec/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace aztec {

namespace {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1,1]
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

constexpr int kGaussOrder = 12;
constexpr Complex kTwoPiI{0.0, 2.0 * kPi};

}  // namespace

ContourNodes circle_nodes(const CircleContour& c, int n) {
  ContourNodes out;
  out.z.resize(n);
  out.w.resize(n);
  for (int k = 0; k < n; ++k) {
    Complex zk = c.point(double(k) / n);
    out.z[k] = zk;
    // (1/2pi i) dz = (z - center)/n dtheta-steps for equispaced nodes
    out.w[k] = (zk - c.center) * (double(c.orientation) / n);
  }
  return out;
}

ContourNodes path_nodes(const PiecewisePath& p, int gauss_order, int panels_per_piece) {
  const GaussRule& g = gauss_rule(gauss_order);
  ContourNodes out;
  for (const PathPiece& piece : p.pieces) {
    for (int panel = 0; panel < panels_per_piece; ++panel) {
      double t0 = double(panel) / panels_per_piece;
      double t1 = double(panel + 1) / panels_per_piece;
      for (int i = 0; i < gauss_order; ++i) {
        double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * g.x[i];
        out.z.push_back(piece.point(t));
        out.w.push_back(piece.derivative(t) * (0.5 * (t1 - t0) * g.w[i] *
                                               double(p.orientation)) /
                        kTwoPiI);
      }
    }
  }
  return out;
}

namespace {

struct SumResult {
  Mat2 value;
  double l1 = 0.0;  // sum of |f| |w|, the noise-floor scale
};

SumResult sum_nodes(const Mat2Fn& f, const ContourNodes& nodes) {  // compensated
  SumResult r;
  Mat2Accum acc;
  for (size_t i = 0; i < nodes.z.size(); ++i) {
    Mat2 v = f(nodes.z[i]) * nodes.w[i];
    acc.add(v);
    r.l1 += v.max_abs();
  }
  r.value = acc.value();
  return r;
}

bool accepted(const Mat2& cur, const Mat2& prev, double l1, const QuadratureSpec& spec) {
  double err = (cur - prev).max_abs();
  double scale = std::max({cur.max_abs(), prev.max_abs(), 1e-300});
  return err < spec.rel_tol * scale + spec.noise_floor * l1;
}

}  // namespace

Mat2 integrate_circle(const Mat2Fn& f, const CircleContour& c, const QuadratureSpec& spec) {
  spec.validate();
  int n = spec.initial_nodes;
  SumResult prev = sum_nodes(f, circle_nodes(c, n));
  while (2 * n <= spec.max_nodes) {
    n *= 2;
    SumResult cur = sum_nodes(f, circle_nodes(c, n));
    if (accepted(cur.value, prev.value, cur.l1, spec)) return cur.value;
    prev = cur;
  }
  throw ConvergenceError("integrate_circle: node budget exhausted");
}

Mat2 integrate_path(const Mat2Fn& f, const PiecewisePath& p, const QuadratureSpec& spec) {
  spec.validate();
  int panels = 1;
  SumResult prev = sum_nodes(f, path_nodes(p, kGaussOrder, panels));
  long budget = std::max<long>(spec.max_nodes, long(p.pieces.size()) * kGaussOrder * 4);
  while (long(2 * panels) * long(p.pieces.size()) * kGaussOrder <= budget) {
    panels *= 2;
    SumResult cur = sum_nodes(f, path_nodes(p, kGaussOrder, panels));
    if (accepted(cur.value, prev.value, cur.l1, spec)) return cur.value;
    prev = cur;
  }
  throw ConvergenceError("integrate_path: panel budget exhausted");
}

namespace {

// Join angle where a cap arc of radius r meets the horizontal legs at +-eps.
double join_angle(double eps, double r) { return std::asin(std::min(1.0, eps / r)); }

// Splits [x_far, x_near] (x_far < x_near < 0) into geometrically growing
// line pieces away from the cut end, so the panel ladder resolves the
// cap-scale behavior and many decades of |w| cheaply.
void append_ray(std::vector<PathPiece>& pieces, double y, double x_near, double x_far,
                bool near_to_far, double first_step) {
  std::vector<double> brk;
  brk.push_back(x_near);
  double step = first_step;
  double x = x_near;
  while (x - step > x_far) {
    x -= step;
    brk.push_back(x);
    step *= 2.0;
  }
  brk.push_back(x_far);
  if (near_to_far) {
    for (size_t i = 0; i + 1 < brk.size(); ++i)
      pieces.push_back(PathPiece::line({brk[i], y}, {brk[i + 1], y}));
  } else {
    for (size_t i = brk.size(); i-- > 1;)
      pieces.push_back(PathPiece::line({brk[i], y}, {brk[i - 1], y}));
  }
}

// Segment [x0, x1] with steps growing geometrically from both endpoints
// (the endpoints sit next to contour caps, where integrands vary fastest).
void append_line_graded(std::vector<PathPiece>& pieces, double y, double x0, double x1,
                        double d0) {
  double len = x1 - x0;
  std::vector<double> brk{x0};
  double a = x0, b = x1, da = d0, db = d0;
  std::vector<double> tail{x1};
  while (b - a > da + db) {
    if (da <= db) {
      a += da;
      brk.push_back(a);
      da *= 2.0;
    } else {
      b -= db;
      tail.push_back(b);
      db *= 2.0;
    }
  }
  for (size_t i = tail.size(); i-- > 0;) brk.push_back(tail[i]);
  (void)len;
  for (size_t i = 0; i + 1 < brk.size(); ++i)
    if (brk[i + 1] > brk[i])
      pieces.push_back(PathPiece::line({brk[i], y}, {brk[i + 1], y}));
}

}  // namespace

PiecewisePath left_cut_wrap(const WeightParams& params, double eps, double cap_radius,
                            double T) {
  double a2 = params.alpha2();
  double r = std::max(cap_radius, eps);
  if (!(T < -a2 - r)) throw InvalidInput("left_cut_wrap: truncation must lie left of the cap");
  double th = join_angle(eps, r);
  double xj = -a2 + r * std::cos(th);
  PiecewisePath p;
  append_ray(p.pieces, +eps, xj, T, /*near_to_far=*/false, 2.0 * r);  // far -> near on top
  p.pieces.push_back(PathPiece::arc({-a2, 0.0}, r, th, -th));
  append_ray(p.pieces, -eps, xj, T, /*near_to_far=*/true, 2.0 * r);  // near -> far on bottom
  return p;
}

PiecewisePath right_cut_wrap(const WeightParams& params, double eps, double cap_radius) {
  double b2 = params.beta2();
  double r = std::max(cap_radius, eps);
  double th = join_angle(eps, r);
  double xl = -b2 - r * std::cos(th);
  double xr = r * std::cos(th);
  PiecewisePath p;
  append_line_graded(p.pieces, +eps, xl, xr, 2.0 * r);
  p.pieces.push_back(PathPiece::arc({0.0, 0.0}, r, th, -th));
  {
    std::vector<PathPiece> bottom;
    append_line_graded(bottom, -eps, xl, xr, 2.0 * r);
    for (size_t i = bottom.size(); i-- > 0;) {
      std::swap(bottom[i].a, bottom[i].b);
      p.pieces.push_back(bottom[i]);
    }
  }
  p.pieces.push_back(PathPiece::arc({-b2, 0.0}, r, th - kPi, -kPi - th));
  return p;
}

Mat2 integrate_cut(const Mat2Fn& f, const CutContour& c, const WeightParams& params,
                   const QuadratureSpec& spec) {
  if (!(c.decay_exponent < -1.0))
    throw InvalidInput("integrate_cut: declared decay exponent must be < -1");
  double a2 = params.alpha2();
  double T = c.left_truncation != 0.0 ? c.left_truncation : -(a2 + std::max(8.0, 4.0 * a2));
  if (T >= -a2) throw InvalidInput("integrate_cut: truncation must satisfy T < -alpha^2");
  Mat2 right = Mat2::zero();
  if (c.include_right_wrap)
    right = integrate_path(f, right_cut_wrap(params, c.eps, c.cap_radius), spec);
  for (int attempt = 0; attempt < 64; ++attempt) {
    PiecewisePath wrap = left_cut_wrap(params, c.eps, c.cap_radius, T);
    Mat2 left = integrate_path(f, wrap, spec);
    // L1 magnitude on a coarse sampling, as the scale for the tail test
    ContourNodes sample = path_nodes(wrap, kGaussOrder, 1);
    double l1 = 0.0;
    for (size_t i = 0; i < sample.z.size(); ++i)
      l1 += f(sample.z[i]).max_abs() * std::abs(sample.w[i]);
    double ftail = std::max(f(Complex(T, +c.eps)).max_abs(), f(Complex(T, -c.eps)).max_abs());
    double tail = 2.0 * ftail * std::abs(T) / ((-c.decay_exponent - 1.0) * 2.0 * kPi);
    double scale = std::max({l1, (left + right).max_abs(), 1e-300});
    if (c.left_truncation != 0.0) return left + right;  // caller owns the tail
    if (tail < spec.rel_tol * scale) return left + right;
    T *= 2.0;
    if (std::abs(T) > 1e60) throw ConvergenceError("integrate_cut: tail does not decay");
  }
  throw ConvergenceError("integrate_cut: truncation search failed");
}

DoubleContour as_double_contour(const CircleContour& c, const QuadratureSpec& spec) {
  spec.validate();
  DoubleContour d;
  int base = spec.initial_nodes;
  d.nodes = [c, base](int level) { return circle_nodes(c, base << level); };
  return d;
}

DoubleContour as_double_contour(const PiecewisePath& p, const QuadratureSpec& spec) {
  spec.validate();
  DoubleContour d;
  d.nodes = [p](int level) { return path_nodes(p, kGaussOrder, 1 << level); };
  return d;
}

Mat2 integrate_double(const std::function<Mat2(Complex, Complex)>& f, const DoubleContour& cz,
                      const DoubleContour& cw, const QuadratureSpec& spec,
                      double min_separation) {
  struct None {};
  return integrate_double_ctx<None, None>(
      [](Complex) { return None{}; }, [](Complex) { return None{}; },
      [&](const None&, const None&, Complex z, Complex w) { return f(z, w); }, cz, cw, spec,
      min_separation);
}

}  // namespace aztec
