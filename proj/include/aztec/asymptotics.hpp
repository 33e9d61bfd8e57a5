#pragma once

// Limit objects at the cusp of the liquid-gas boundary (Pearcey-type double
// integral, Gaussian kernel) and finite-N convergence studies against them.

#include "aztec/kernel.hpp"
#include "aztec/phase.hpp"

namespace aztec {

enum class PearceyOrientation { Even, Odd };  // parity of the level m branch

struct PearceyOptions {
  double truncation_radius = 8.0;  // >= 6: e^{-r^4/4} tail below 1e-15
  double join = 0.15;              // |Re| of the short segments joining the rays
  QuadratureSpec quad{};
};

// (1/(2pi i)^2) int_{Sigma u (+-Sigma)} ds int_{iR} dt
//   e^{s^4/4 + v s^2/2 + u s} e^{-(t^4/4 + v' t^2/2 + u' t)} / (t - s);
// real for real parameters.
Complex pearcey_double(double u, double v, double up, double vp,
                       PearceyOrientation orient = PearceyOrientation::Even,
                       const PearceyOptions& opts = {});

// Gaussian limit of the scaled gas kernel: rank-one matrix on span{(1,1;-1,-1)}
// for v > v', zero for v < v' (and for v = v', u != u'); the equal-argument
// case is outside the theorem and rejected.
Mat2 gaussian_limit(double u, double v, double up, double vp, const WeightParams& p);

// Integer sites realizing the cusp scaling at finite N, with parity-correct
// rounding and the effective scaled coordinates they correspond to.
struct CuspCoordinates {
  int N = 0;
  int m = 0, n = 0, mp = 0, np = 0;
  double u_eff = 0, v_eff = 0, up_eff = 0, vp_eff = 0;
  double round_offset = 0;  // largest |site - target| over the four sites
};

CuspCoordinates cusp_sites(const WeightParams& p, int N, double u, double v, double up,
                           double vp);

// N^{1/4} (-1)^{(dn-dm)/2} alpha^{-dn} (K_N - K_gas) at the realized sites.
Mat2 cusp_scaled_difference(const WeightParams& p, const CuspCoordinates& c,
                            const KernelOptions& opts = {});

// Right side of the cusp limit at the effective coordinates.
Mat2 pearcey_rhs(const WeightParams& p, const CuspCoordinates& c,
                 const PearceyOptions& opts = {});

// N^{1/4} (-1)^{(dn-|dm|)/2} alpha^{-dn} K_gas at the realized sites.
Mat2 gas_scaled(const WeightParams& p, const CuspCoordinates& c,
                const KernelOptions& opts = {});

// Frobenius norm of the component of M orthogonal to span{(1,1;-1,-1)}.
double offspan_norm(const Mat2& M);

struct DecayReport {
  std::vector<int> Ns;
  std::vector<double> norms;  // ||K_N - K_gas||
  double slope = 0.0;         // fitted d log(norm) / dN
  double r2 = 0.0;
};

// Fits log ||K_N - K_gas|| against N at a fixed rescaled position.
DecayReport gas_convergence_study(const WeightParams& p, PhasePoint pp,
                                  const std::vector<int>& Ns,
                                  const KernelOptions& opts = {});

}  // namespace aztec
