#pragma once

// Adaptive contour quadrature for analytic matrix-valued integrands:
// trapezoid rule on circles (spectrally accurate for periodic analytic
// integrands), composite Gauss-Legendre on piecewise paths (cut-hugging
// contours, indented circles), and tensor products of the two.
// All integrals are normalized as (1/2pi i) * integral f(z) dz.

#include "aztec/types.hpp"

#include <functional>
#include <vector>

namespace aztec {

struct QuadratureSpec {
  int initial_nodes = 64;   // >= 16, power of two
  int max_nodes = 16384;    // per axis
  double rel_tol = 1e-10;
  // summation-noise floor per unit of the L1 term magnitude; integrals of
  // analytic functions whose exact value is ~0 never converge relative to
  // themselves and are instead accepted at this floor
  double noise_floor = 1e-15;

  void validate() const {
    if (initial_nodes < 16 || (initial_nodes & (initial_nodes - 1)) != 0)
      throw InvalidInput("QuadratureSpec: initial_nodes must be a power of two >= 16");
    if (max_nodes < initial_nodes) throw InvalidInput("QuadratureSpec: max_nodes too small");
    if (!(rel_tol > 0)) throw InvalidInput("QuadratureSpec: rel_tol must be positive");
  }
};

struct CircleContour {
  Complex center;
  double radius = 1.0;
  int orientation = +1;   // +1 counterclockwise, -1 clockwise
  double phase = 0.0;     // node offset in turns; keeps nodes off axis points

  CircleContour(Complex c, double r, int o = +1, double ph = 0.0)
      : center(c), radius(r), orientation(o), phase(ph) {
    if (!(r > 0)) throw InvalidInput("CircleContour: radius must be positive");
    if (o != 1 && o != -1) throw InvalidInput("CircleContour: orientation must be +-1");
  }
  Complex point(double t) const {  // t in [0,1)
    return center + std::polar(radius, 2.0 * kPi * (t + phase));
  }
};

// One smooth piece of a path: either a line segment or a circular arc.
struct PathPiece {
  enum Kind { Line, Arc } kind = Line;
  Complex a, b;        // Line: endpoints
  Complex center;      // Arc
  double radius = 0.0, theta0 = 0.0, theta1 = 0.0;

  static PathPiece line(Complex a, Complex b) {
    PathPiece p;
    p.kind = Line;
    p.a = a;
    p.b = b;
    return p;
  }
  static PathPiece arc(Complex c, double r, double th0, double th1) {
    PathPiece p;
    p.kind = Arc;
    p.center = c;
    p.radius = r;
    p.theta0 = th0;
    p.theta1 = th1;
    return p;
  }
  Complex point(double t) const {
    if (kind == Line) return a + (b - a) * t;
    return center + std::polar(radius, theta0 + (theta1 - theta0) * t);
  }
  Complex derivative(double t) const {
    if (kind == Line) return b - a;
    double th = theta0 + (theta1 - theta0) * t;
    return Complex(0.0, theta1 - theta0) * std::polar(radius, th);
  }
};

struct PiecewisePath {
  std::vector<PathPiece> pieces;
  int orientation = +1;  // -1 negates the result exactly
};

// Geometry for the contour that wraps the negative real axis (both cuts),
// used by the stabilized kernel: two clockwise wraps, one around
// (-inf,-alpha^2] (truncated on the left) and one around [-beta^2, 0].
struct CutContour {
  double eps = 1e-2;         // offset of the horizontal legs above/below the axis
  double cap_radius = 1e-2;  // radius of the end caps
  double decay_exponent = -1.5;  // integrand ~ |w|^p along the rays; must be < -1
  double left_truncation = 0.0;  // 0 = choose from decay_exponent and rel_tol
  bool include_right_wrap = true;
};

// Sampled nodes of a contour: values z_k and quadrature weights d_k such
// that (1/2pi i) * integral f dz ~ sum_k f(z_k) d_k.
struct ContourNodes {
  std::vector<Complex> z;
  std::vector<Complex> w;
};

ContourNodes circle_nodes(const CircleContour& c, int n);
ContourNodes path_nodes(const PiecewisePath& p, int gauss_order, int panels_per_piece);

using Mat2Fn = std::function<Mat2(Complex)>;

// (1/2pi i) * closed integral of f over the circle; trapezoid rule with node
// doubling until successive estimates differ by < rel_tol in max-entry norm.
Mat2 integrate_circle(const Mat2Fn& f, const CircleContour& c, const QuadratureSpec& spec);

// Same contract over a piecewise path (composite Gauss-Legendre, panel doubling).
Mat2 integrate_path(const Mat2Fn& f, const PiecewisePath& p, const QuadratureSpec& spec);

// Builds the clockwise wrap of (-inf,-alpha^2], truncated at x = T.
PiecewisePath left_cut_wrap(const WeightParams& params, double eps, double cap_radius,
                            double T);
// Builds the clockwise wrap of [-beta^2, 0].
PiecewisePath right_cut_wrap(const WeightParams& params, double eps, double cap_radius);

// (1/2pi i) * integral over the cut contour. The truncation point is grown
// until the declared algebraic tail bound drops below rel_tol relative to
// the accumulated magnitude. Throws if decay_exponent >= -1.
Mat2 integrate_cut(const Mat2Fn& f, const CutContour& c, const WeightParams& params,
                   const QuadratureSpec& spec);

// Node provider used by the tensor-product double integral.
struct DoubleContour {
  std::function<ContourNodes(int level)> nodes;  // level 0,1,2,... doubles density
  double min_node_gap = 0.0;                     // for collision diagnostics only
};

DoubleContour as_double_contour(const CircleContour& c, const QuadratureSpec& spec);
DoubleContour as_double_contour(const PiecewisePath& p, const QuadratureSpec& spec);

// Tensor-product double integral
//   (1/2pi i)^2 * integral_z integral_w  combine(zctx, wctx, z, w) dw dz
// with independent adaptive refinement per axis. `prep_z`/`prep_w` are
// evaluated once per node and their results handed to `combine`; keeps
// per-node matrix powers out of the inner pair loop. When
// `min_separation > 0`, node pairs closer than that raise ConvergenceError
// (the 1/(z-w) guard).
template <class ZCtx, class WCtx, class PrepZ, class PrepW, class Combine>
Mat2 integrate_double_ctx(const PrepZ& prep_z, const PrepW& prep_w, const Combine& combine,
                          const DoubleContour& cz, const DoubleContour& cw,
                          const QuadratureSpec& spec, double min_separation) {
  spec.validate();
  double l1 = 0.0;  // magnitude scale of the summation, for the noise floor
  auto eval = [&](int lz, int lw) -> Mat2 {
    ContourNodes nz = cz.nodes(lz);
    ContourNodes nw = cw.nodes(lw);
    std::vector<WCtx> wctx;
    wctx.reserve(nw.z.size());
    for (Complex w : nw.z) wctx.push_back(prep_w(w));
    Mat2Accum total;
    double mag = 0.0;
    for (size_t i = 0; i < nz.z.size(); ++i) {
      ZCtx zc = prep_z(nz.z[i]);
      Mat2Accum row;
      double rowmag = 0.0;
      for (size_t j = 0; j < nw.z.size(); ++j) {
        if (min_separation > 0 && std::abs(nz.z[i] - nw.z[j]) < min_separation)
          throw ConvergenceError("integrate_double: contours collide (|z-w| below separation)");
        Mat2 v = combine(zc, wctx[j], nz.z[i], nw.z[j]) * nw.w[j];
        row.add(v);
        rowmag += v.max_abs();
      }
      total.add(row.value() * nz.w[i]);
      mag += rowmag * std::abs(nz.w[i]);
    }
    l1 = mag;
    return total.value();
  };
  int lz = 0, lw = 0;
  Mat2 cur = eval(lz, lw);
  for (int iter = 0; iter < 24; ++iter) {
    Mat2 rz = eval(lz + 1, lw);
    Mat2 rw = eval(lz, lw + 1);
    double ez = (rz - cur).max_abs();
    double ew = (rw - cur).max_abs();
    double scale = std::max({cur.max_abs(), rz.max_abs(), rw.max_abs(), 1e-300});
    double floor = 1e-13 * l1;  // compensated-summation noise floor
    double thresh = spec.rel_tol * scale + floor;
    if (ez < thresh && ew < thresh) {
      // acceptance requires the joint refinement to agree with both
      // single-axis refinements; otherwise keep refining from it
      Mat2 joint = eval(lz + 1, lw + 1);
      if ((joint - rz).max_abs() < thresh && (joint - rw).max_abs() < thresh) return joint;
      ++lz;
      ++lw;
      cur = joint;
    } else if (ez >= ew) {
      ++lz;
      cur = rz;
    } else {
      ++lw;
      cur = rw;
    }
    if ((spec.initial_nodes << lz) > spec.max_nodes || (spec.initial_nodes << lw) > spec.max_nodes)
      throw ConvergenceError("integrate_double: node budget exhausted");
  }
  throw ConvergenceError("integrate_double: no convergence");
}

// Convenience wrapper for plain integrands f(z, w).
Mat2 integrate_double(const std::function<Mat2(Complex, Complex)>& f, const DoubleContour& cz,
                      const DoubleContour& cw, const QuadratureSpec& spec,
                      double min_separation = 1e-3);

}  // namespace aztec
