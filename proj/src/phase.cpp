#include "aztec/phase.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <map>

namespace aztec {

const char* to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::Solid: return "solid";
    case PhaseLabel::Liquid: return "liquid";
    case PhaseLabel::Gas: return "gas";
    case PhaseLabel::SolidLiquidBoundary: return "solid-liquid";
    case PhaseLabel::LiquidGasBoundary: return "liquid-gas";
  }
  return "?";
}

Complex phi_derivative(const SurfacePoint& s, PhasePoint pp, const WeightParams& p) {
  Complex z = s.z;
  if (std::abs(z) < 1e-14 || std::abs(z - 1.0) < 1e-14)
    throw DomainError("phi_derivative: pole at z in {0, 1}");
  return 2.0 / (z - 1.0) - (1.0 + pp.xi2) / z + pp.xi1 * dlog_lambda(s, p);
}

Complex phi_value(const SurfacePoint& s, PhasePoint pp, const WeightParams& p) {
  Complex z = s.z;
  Complex lam = lambda(s, p);
  return 2.0 * std::log(z - 1.0) - (1.0 + pp.xi2) * std::log(z) +
         pp.xi1 * std::log(lam);
}

std::array<double, 5> saddle_quartic(PhasePoint pp, const WeightParams& p) {
  double s = p.alpha2() + p.beta2();
  double x1 = pp.xi1, x2 = pp.xi2;
  double x1s = x1 * x1, x2s = x2 * x2;
  std::array<double, 5> c;
  c[4] = (1.0 - x2) * (1.0 - x2);
  c[3] = s * ((1.0 - x2) * (1.0 - x2) - x1s) + 2.0 * (1.0 - x2s - x1s);
  c[2] = 2.0 * s * (1.0 - x2s - x1s) + 2.0 - 4.0 * x1s + 2.0 * x2s;
  c[1] = s * ((1.0 + x2) * (1.0 + x2) - x1s) + 2.0 * (1.0 - x2s - x1s);
  c[0] = (1.0 + x2) * (1.0 + x2);
  return c;
}

std::vector<Complex> quartic_roots(const std::array<double, 5>& c) {
  // strip leading zeros (xi2 = 1 degenerates the quartic)
  int deg = 4;
  while (deg > 0 && std::abs(c[deg]) < 1e-300) --deg;
  if (deg == 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) {
    comp(i, deg - 1) = -c[i] / c[deg];
    if (i + 1 < deg) comp(i + 1, i) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
  std::vector<Complex> roots;
  auto poly = [&](Complex z) {
    Complex v = 0.0, d = 0.0;
    for (int k = deg; k >= 0; --k) {
      d = d * z + v;
      v = v * z + c[k];
    }
    return std::make_pair(v, d);
  };
  for (int i = 0; i < deg; ++i) {
    Complex r = es.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {  // Newton polish; harmless at multiple roots
      auto [v, d] = poly(r);
      if (std::abs(d) < 1e-30) break;
      Complex step = v / d;
      if (!std::isfinite(std::abs(step))) break;
      r -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(r))) break;
    }
    roots.push_back(r);
  }
  return roots;
}

namespace {

// Union of quartic roots into clusters within the coalescence tolerance.
struct Cluster {
  Complex z;
  int mult = 0;
};

std::vector<Cluster> cluster_roots(const std::vector<Complex>& roots, double tol) {
  std::vector<Cluster> cl;
  for (Complex r : roots) {
    bool merged = false;
    for (auto& c : cl) {
      if (std::abs(r - c.z) < tol) {
        c.z = (c.z * double(c.mult) + r) / double(c.mult + 1);
        ++c.mult;
        merged = true;
        break;
      }
    }
    if (!merged) cl.push_back({r, 1});
  }
  return cl;
}

int resolve_sheet(Complex z, PhasePoint pp, const WeightParams& p) {
  double v1 = 1e308, v2 = 1e308;
  try {
    v1 = std::abs(phi_derivative({z, 1}, pp, p));
  } catch (const DomainError&) {
  }
  try {
    v2 = std::abs(phi_derivative({z, 2}, pp, p));
  } catch (const DomainError&) {
  }
  double lo = std::min(v1, v2), hi = std::max(v1, v2);
  if (lo > 1e-4 && hi > 1e-4) return 0;       // neither annihilates: unresolved
  if (hi < 1e-6 || hi < 1e3 * lo) return 3;    // both vanish comparably
  return v1 <= v2 ? 1 : 2;
}

}  // namespace

std::pair<PhaseLabel, SaddleSet> classify(PhasePoint pp, const WeightParams& p,
                                          const ClassifyOptions& opts) {
  if (!(std::abs(pp.xi1) < 1.0 && std::abs(pp.xi2) < 1.0))
    throw InvalidInput("classify: point must lie in the open square");
  double a2 = p.alpha2(), b2 = p.beta2();
  bool on_axis = std::abs(pp.xi1) < opts.axis_window || std::abs(pp.xi2) < opts.axis_window;

  auto roots = quartic_roots(saddle_quartic(pp, p));
  auto clusters = cluster_roots(roots, opts.delta_saddle);

  SaddleSet set;
  bool coalesce_c1 = false, coalesce_c2 = false;
  int simple_c1 = 0, simple_c2 = 0, off_surface = 0;

  for (const Cluster& c : clusters) {
    Saddle s;
    s.z = c.z;
    s.multiplicity = c.mult;
    double im = std::abs(c.z.imag());
    double re = c.z.real();
    bool real_root = im < 100.0 * opts.delta_saddle;
    bool near_branch = real_root && (std::abs(re + a2) < opts.branch_window ||
                                     std::abs(re + b2) < opts.branch_window);
    if (near_branch) {
      // branch points lie on C1; Phi'_j blows up there, so multiplicity
      // counting replaces sheet testing
      s.at_branch_point = true;
      s.cycle = SaddleCycle::C1;
      s.sheet = 3;
      if (c.mult >= 2) coalesce_c1 = true;
      else simple_c1 += 1;
    } else if (real_root && re > -a2 + opts.branch_window && re < -b2 - opts.branch_window) {
      // interior of (-alpha^2, -beta^2): y real, the point lies on C1
      s.cycle = SaddleCycle::C1;
      if (c.mult == 1) {
        s.sheet = resolve_sheet(c.z, pp, p);
        simple_c1 += 1;
      } else if (on_axis) {
        // double root on the symmetry axes = one simple saddle on each
        // sheet, not a coalescence
        s.sheet = 3;
        simple_c1 += 2;
      } else {
        coalesce_c1 = true;
      }
    } else if (real_root && re > opts.branch_window) {
      // positive axis: C2
      s.cycle = SaddleCycle::C2;
      if (c.mult == 1) {
        s.sheet = resolve_sheet(c.z, pp, p);
        simple_c2 += 1;
      } else if (on_axis) {
        s.sheet = 3;
        simple_c2 += 2;
      } else {
        coalesce_c2 = true;
      }
    } else {
      // complex root, or real with imaginary y: off the real part
      s.cycle = SaddleCycle::None;
      s.sheet = resolve_sheet(c.z, pp, p);
      if (on_axis && c.mult == 2)
        off_surface += 2;  // the axis double root away from C1/C2
      else
        off_surface += c.mult;
    }
    set.saddles.push_back(s);
  }

  PhaseLabel label;
  if (coalesce_c2)
    label = PhaseLabel::SolidLiquidBoundary;
  else if (coalesce_c1)
    label = PhaseLabel::LiquidGasBoundary;
  else if (simple_c2 >= 2)
    label = PhaseLabel::Solid;
  else if (off_surface >= 2)
    label = PhaseLabel::Liquid;
  else
    label = PhaseLabel::Gas;
  return {label, set};
}

namespace {

struct Term {
  double coeff;
  int e1, e2;  // exponents of xi1^2 and xi2^2 ... stored as powers of xi1, xi2
};

// terms of the printed degree-8 polynomial; exponents are of xi1 and xi2
std::vector<Term> boundary_terms(const WeightParams& p) {
  double A = p.alpha2();  // alpha^2
  auto P = [&](double x, int k) { return std::pow(x, k); };
  double a1 = A + 1.0, am = A - 1.0;
  std::vector<Term> t;
  double c;
  c = P(a1, 6);
  t.push_back({c, 8, 0});
  t.push_back({c, 0, 8});
  // (alpha^2 + 2 alpha - 1)(alpha^2 - 2 alpha - 1) with A = alpha^2
  c = -4.0 * P(a1, 4) * (A + 2.0 * p.alpha - 1.0) * (A - 2.0 * p.alpha - 1.0);
  t.push_back({c, 6, 2});
  t.push_back({c, 2, 6});
  c = -4.0 * P(a1, 4) * (P(A, 2) - A + 1.0);
  t.push_back({c, 6, 0});
  t.push_back({c, 0, 6});
  c = 2.0 * P(a1, 2) * (3.0 * P(A, 4) - 20.0 * P(A, 3) + 82.0 * P(A, 2) - 20.0 * A + 3.0);
  t.push_back({c, 4, 4});
  c = 4.0 * P(a1, 2) * (P(A, 4) + 17.0 * P(A, 3) - 48.0 * P(A, 2) + 17.0 * A + 1.0);
  t.push_back({c, 4, 2});
  t.push_back({c, 2, 4});
  c = 6.0 * P(am * a1, 2) * (P(A, 2) + 1.0);  // (alpha^4-1)^2 (alpha^4+1)
  t.push_back({c, 4, 0});
  t.push_back({c, 0, 4});
  c = 4.0 * P(am, 2) * (P(A, 4) - 22.0 * P(A, 3) - 42.0 * P(A, 2) - 22.0 * A + 1.0);
  t.push_back({c, 2, 2});
  c = -4.0 * P(am, 4) * (P(A, 2) + A + 1.0);  // (a^2+a+1)(a^2-a+1) = a^4+a^2+1
  t.push_back({c, 2, 0});
  t.push_back({c, 0, 2});
  c = P(am, 6);
  t.push_back({c, 0, 0});
  return t;
}

}  // namespace

double boundary_poly(PhasePoint pp, const WeightParams& p) {
  double v = 0.0;
  for (const Term& t : boundary_terms(p))
    v += t.coeff * std::pow(pp.xi1, t.e1) * std::pow(pp.xi2, t.e2);
  return v;
}

double boundary_poly_scale(PhasePoint pp, const WeightParams& p) {
  double v = 0.0;
  for (const Term& t : boundary_terms(p))
    v += std::abs(t.coeff * std::pow(pp.xi1, t.e1) * std::pow(pp.xi2, t.e2));
  return std::max(v, 1e-300);
}

std::array<double, 5> boundary_axis_octic(const WeightParams& p) {
  // restriction to xi2 = 0, as a polynomial in u = xi1^2
  std::array<double, 5> q{};
  for (const Term& t : boundary_terms(p)) {
    if (t.e2 != 0) continue;
    q[t.e1 / 2] += t.coeff;
  }
  return q;
}

SpecialPoints special_points(const WeightParams& p) {
  SpecialPoints s;
  s.cusp = p.xi2_star;
  double den = 2.0 * std::sqrt(p.alpha2() + 1.0);
  s.diag_outer = (p.alpha + 1.0) / den;
  s.diag_inner = (p.alpha - 1.0) / den;
  s.axis_simple = 1.0;
  return s;
}

namespace {

struct EdgeKey {
  int i, j, dir;  // dir 0: edge from (i,j) to (i+1,j); dir 1: to (i,j+1)
  bool operator<(const EdgeKey& o) const {
    return std::tie(i, j, dir) < std::tie(o.i, o.j, o.dir);
  }
};

}  // namespace

BoundaryCurves trace_boundary(const WeightParams& p, int res) {
  if (res < 64) throw InvalidInput("trace_boundary: grid resolution must be >= 64");
  auto coord = [&](int k) { return -1.0 + 2.0 * k / res; };
  std::vector<double> val((res + 1) * (res + 1));
  auto v = [&](int i, int j) -> double& { return val[j * (res + 1) + i]; };
  for (int j = 0; j <= res; ++j)
    for (int i = 0; i <= res; ++i) v(i, j) = boundary_poly({coord(i), coord(j)}, p);

  // crossing point on an edge, refined by bisection on the polynomial
  std::map<EdgeKey, int> edge_pt;
  std::vector<std::array<double, 2>> pts;
  auto crossing = [&](EdgeKey e) -> int {
    auto it = edge_pt.find(e);
    if (it != edge_pt.end()) return it->second;
    double x0 = coord(e.i), y0 = coord(e.j);
    double x1 = e.dir == 0 ? coord(e.i + 1) : x0;
    double y1 = e.dir == 0 ? y0 : coord(e.j + 1);
    double f0 = v(e.i, e.j);
    double a = 0.0, b = 1.0;
    for (int it2 = 0; it2 < 60; ++it2) {
      double mid = 0.5 * (a + b);
      double fm = boundary_poly({x0 + (x1 - x0) * mid, y0 + (y1 - y0) * mid}, p);
      if ((fm > 0) == (f0 > 0))
        a = mid;
      else
        b = mid;
    }
    double t = 0.5 * (a + b);
    pts.push_back({x0 + (x1 - x0) * t, y0 + (y1 - y0) * t});
    int idx = int(pts.size()) - 1;
    edge_pt.emplace(e, idx);
    return idx;
  };

  // marching squares: collect segments as pairs of edge points
  std::map<int, std::vector<int>> adj;
  auto add_seg = [&](EdgeKey a, EdgeKey b) {
    int u = crossing(a), w = crossing(b);
    adj[u].push_back(w);
    adj[w].push_back(u);
  };
  for (int j = 0; j < res; ++j)
    for (int i = 0; i < res; ++i) {
      int code = 0;
      if (v(i, j) > 0) code |= 1;
      if (v(i + 1, j) > 0) code |= 2;
      if (v(i + 1, j + 1) > 0) code |= 4;
      if (v(i, j + 1) > 0) code |= 8;
      if (code == 0 || code == 15) continue;
      EdgeKey bottom{i, j, 0}, right{i + 1, j, 1}, top{i, j + 1, 0}, left{i, j, 1};
      switch (code) {
        case 1: case 14: add_seg(bottom, left); break;
        case 2: case 13: add_seg(bottom, right); break;
        case 3: case 12: add_seg(left, right); break;
        case 4: case 11: add_seg(right, top); break;
        case 6: case 9: add_seg(bottom, top); break;
        case 7: case 8: add_seg(left, top); break;
        case 5: case 10: {
          // ambiguous: resolve by the center sign
          double cx = 0.5 * (coord(i) + coord(i + 1)), cy = 0.5 * (coord(j) + coord(j + 1));
          bool center_pos = boundary_poly({cx, cy}, p) > 0;
          bool corner_pos = (code == 5);  // corners (i,j),(i+1,j+1) positive
          if (center_pos == corner_pos) {
            add_seg(bottom, right);
            add_seg(left, top);
          } else {
            add_seg(bottom, left);
            add_seg(right, top);
          }
          break;
        }
        default: break;
      }
    }

  // chain segments into polylines
  BoundaryCurves out;
  std::vector<bool> used(pts.size(), false);
  for (size_t start = 0; start < pts.size(); ++start) {
    if (used[start] || adj[int(start)].empty()) continue;
    std::vector<int> chain{int(start)};
    used[start] = true;
    int prev = -1, cur = int(start);
    while (true) {
      int next = -1;
      for (int cand : adj[cur])
        if (cand != prev && !used[cand]) {
          next = cand;
          break;
        }
      if (next == -1) {
        // closed loop back to start?
        break;
      }
      chain.push_back(next);
      used[next] = true;
      prev = cur;
      cur = next;
    }
    Polyline pl;
    for (int idx : chain) pl.pts.push_back(pts[idx]);
    // closed if the endpoints are adjacent in the segment graph
    pl.closed = std::find(adj[cur].begin(), adj[cur].end(), int(start)) != adj[cur].end();
    if (pl.pts.size() >= 8) out.components.push_back(std::move(pl));
  }

  // outer = component with the largest sup-norm extent
  double best = -1.0, second = -1.0;
  for (size_t k = 0; k < out.components.size(); ++k) {
    double ext = 0.0;
    for (auto& q : out.components[k].pts)
      ext = std::max(ext, std::max(std::abs(q[0]), std::abs(q[1])));
    if (ext > best) {
      second = best;
      out.inner_index = out.outer_index;
      best = ext;
      out.outer_index = int(k);
    } else if (ext > second) {
      second = ext;
      out.inner_index = int(k);
    }
  }
  return out;
}

namespace {

bool point_in_polyline(const Polyline& pl, double x, double y) {
  bool in = false;
  size_t n = pl.pts.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    double xi = pl.pts[i][0], yi = pl.pts[i][1];
    double xj = pl.pts[j][0], yj = pl.pts[j][1];
    if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
  }
  return in;
}

}  // namespace

PhaseLabel region_label(const BoundaryCurves& curves, double xi1, double xi2) {
  bool in_outer = curves.outer_index >= 0 &&
                  point_in_polyline(curves.components[curves.outer_index], xi1, xi2);
  bool in_inner = curves.inner_index >= 0 &&
                  point_in_polyline(curves.components[curves.inner_index], xi1, xi2);
  if (in_inner) return PhaseLabel::Gas;
  if (in_outer) return PhaseLabel::Liquid;
  return PhaseLabel::Solid;
}

double distance_to_curves(const BoundaryCurves& curves, double xi1, double xi2) {
  double d = 1e300;
  for (const auto& pl : curves.components)
    for (const auto& q : pl.pts)
      d = std::min(d, std::hypot(q[0] - xi1, q[1] - xi2));
  return d;
}

}  // namespace aztec
