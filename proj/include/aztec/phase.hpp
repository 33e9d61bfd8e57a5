#pragma once

// Saddle-point computation, phase classification and arctic-curve tracing
// in the rescaled (xi1, xi2) square.

#include "aztec/algebra.hpp"

#include <array>
#include <vector>

namespace aztec {

struct PhasePoint {
  double xi1 = 0.0;
  double xi2 = 0.0;
};

enum class PhaseLabel { Solid, Liquid, Gas, SolidLiquidBoundary, LiquidGasBoundary };

const char* to_string(PhaseLabel label);

enum class SaddleCycle { C1, C2, None };

struct Saddle {
  Complex z;
  int multiplicity = 1;     // quartic multiplicity of the cluster
  int sheet = 0;            // 1, 2, 3 = both sheets (axis double root), 0 = unresolved
  SaddleCycle cycle = SaddleCycle::None;
  bool at_branch_point = false;
};

struct SaddleSet {
  std::vector<Saddle> saddles;
  int total_multiplicity() const {
    int t = 0;
    for (const auto& s : saddles) t += s.multiplicity;
    return t;
  }
};

struct ClassifyOptions {
  double delta_saddle = 1e-7;   // root-coalescence tolerance
  double branch_window = 1e-4;  // within this of a branch point: resolve by multiplicity
  double axis_window = 1e-12;   // |xi| below which the axis special case applies
};

// Phi'_j(z) = 2/(z-1) - (1+xi2)/z + xi1 * lambda'(z)/lambda(z) on the sheet.
Complex phi_derivative(const SurfacePoint& s, PhasePoint pp, const WeightParams& p);

// Phi_j(z) with principal branches of all three logarithms (multi-valued
// object; suitable for local expansions away from the log cuts).
Complex phi_value(const SurfacePoint& s, PhasePoint pp, const WeightParams& p);

// Coefficients of the saddle quartic, ascending order c[0] + c[1] z + ... + c[4] z^4.
std::array<double, 5> saddle_quartic(PhasePoint pp, const WeightParams& p);

// Roots by companion-matrix eigenvalues, Newton-polished.
std::vector<Complex> quartic_roots(const std::array<double, 5>& c);

std::pair<PhaseLabel, SaddleSet> classify(PhasePoint pp, const WeightParams& p,
                                          const ClassifyOptions& opts = {});

// Degree-8 coalescence polynomial evaluated verbatim, and the sum of the
// absolute values of its terms (scale for relative residuals).
double boundary_poly(PhasePoint pp, const WeightParams& p);
double boundary_poly_scale(PhasePoint pp, const WeightParams& p);

// Coefficients (in u = xi1^2) of the curve restricted to the xi2 = 0 axis.
std::array<double, 5> boundary_axis_octic(const WeightParams& p);

struct SpecialPoints {
  double cusp = 0.0;        // (0, +-cusp), (+-cusp, 0); multiplicity 3 on the axis
  double diag_outer = 0.0;  // (+-d, +-d) on the outer component
  double diag_inner = 0.0;  // (+-d, +-d) on the inner component
  double axis_simple = 1.0; // +-1, multiplicity 1 on the axis
};

SpecialPoints special_points(const WeightParams& p);

struct Polyline {
  std::vector<std::array<double, 2>> pts;
  bool closed = false;
};

struct BoundaryCurves {
  std::vector<Polyline> components;
  int outer_index = -1;
  int inner_index = -1;  // -1 when absent (alpha = 1)
};

// Marching-squares zero contour of boundary_poly on [-1,1]^2, with each
// vertex refined onto the curve by bisection along its grid edge.
BoundaryCurves trace_boundary(const WeightParams& p, int grid_resolution);

// Region test of the phase diagram: inside the inner component = Gas,
// between = Liquid, outside the outer = Solid.
PhaseLabel region_label(const BoundaryCurves& curves, double xi1, double xi2);

// Distance from a point to the traced polylines (vertex-resolution).
double distance_to_curves(const BoundaryCurves& curves, double xi1, double xi2);

}  // namespace aztec
