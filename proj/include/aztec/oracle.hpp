#pragma once

// Independent ground-truth computations at desk scale: exhaustive tiling
// enumeration with exact weight bookkeeping, the dense transfer-matrix
// (Eynard-Mehta) kernel, the Gram/reproducing-kernel route, and the MVOP /
// Riemann-Hilbert identities. Everything here is deliberately built along
// different code paths from the contour kernel it validates.

#include "aztec/kernel.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <map>
#include <vector>

namespace aztec::oracle {

enum class DominoType { North, East, South, West };

struct Domino {
  int i = 0, j = 0;       // lower-left corner of the left/bottom cell
  bool horizontal = false;
  DominoType type = DominoType::North;
  int bi = 0, bj = 0;     // black cell of the domino
};

struct Tiling {
  std::vector<Domino> dominoes;
  long long a_exp = 0;  // w(T) = a^{a_exp} = alpha^{a_exp/2}; a_exp is even
};

// Weighted tiling count bucketed by the exponent of alpha.
struct WeightedSum {
  std::map<long long, long long> count_by_exp;  // alpha^k -> multiplicity
  void add(long long half_exp) { ++count_by_exp[half_exp]; }
  double evaluate(double alpha) const;
};

// Cell region of an Aztec diamond of the given order centered at (ci, cj):
// cells (i, j) with |i - ci + 1/2| + |j - cj + 1/2| <= order.
struct Region {
  int order = 0;
  int ci = 0, cj = 0;
  std::vector<std::pair<int, int>> cells;  // scan order
  bool contains(int i, int j) const;
};

Region diamond_region(int order, int ci = 0, int cj = 0);

struct Enumeration {
  int N = 0;  // diamond size 2N
  Region region;
  std::vector<Tiling> tilings;
  double partition_function(double alpha) const;
};

// All tilings of the size-2N diamond (N <= 2 at this exhaustive scale).
Enumeration enumerate_tilings(int N);
// All tilings of an arbitrary diamond region under the global weight rule.
std::vector<Tiling> enumerate_region(const Region& region);

// Independent perfect-matching count (column-by-column bitmask recursion,
// shares no code with the exact-cover enumerator).
long long matching_count(const Region& region);

// Black particle sites (West/South dominoes) in B_N coordinates.
std::vector<BlackSite> tiling_to_particles(const Tiling& t, int N);
// Black + white particles of the extended process, in doubled coordinates.
std::vector<HalfSite> tiling_to_extended_particles(const Tiling& t, int N);

// P[S subset X] from the exhaustive enumeration, as an exact weight ratio.
double empirical_correlation(const Enumeration& e, const WeightParams& p,
                             const std::vector<BlackSite>& S);
// Frequency of one extended-site occupation (doubled coordinates).
double empirical_extended_one_point(const Enumeration& e, const WeightParams& p, HalfSite s);

// Partition function of the double-diamond path ensemble: the size-2N
// diamond together with the size-(2N-1) diamond attached along its
// south-east side, which is what det[T^{2N}(j,k)] counts.
double double_diamond_partition(const WeightParams& p, int N);

// Dense finite-window transfer matrices and the Eynard-Mehta kernel,
// evaluated in 50-digit arithmetic (the biorthogonal sum cancels through
// magnitudes that exhaust double precision already at N = 4).
class TransferOracle {
 public:
  // window [lo, hi] defaults to [-2N - margin, 4N + margin]
  TransferOracle(const WeightParams& p, int N, int margin = 0);

  // kernel in path coordinates (level m, integer height u)
  double kernel_path(int m, int u, int mp, int up) const;
  // kernel at B_N sites (height u = m + n)
  double kernel_site(BlackSite x, BlackSite y) const;
  double partition_det() const { return detG_; }
  // finite section of T^{2N} over positions [0, 2N-1]
  Eigen::MatrixXd gram_section() const;
  int lo() const { return lo_; }

 private:
  struct Impl;
  int N_, lo_, hi_;
  std::shared_ptr<Impl> impl_;
  double detG_ = 0.0;
};

// Gram matrix of the contour route: 2N x 2N with 2x2 blocks
// G_{x,y} = (1/2pi i) oint A^{2N}(z) z^{x-y} dz/z.
Eigen::MatrixXcd gram_matrix(const WeightParams& p, int N,
                             const QuadratureSpec& spec = {});

// Reproducing kernel R_N(w,z) = (w^{N-1} I ... I) G^{-1} (I ... z^{N-1} I)^t.
Mat2 reproducing_kernel(const Eigen::MatrixXcd& Ginv, int N, Complex w, Complex z);

// Reproducing-kernel residual: (1/2pi i) oint R_N(w,z) W^N(z) Q^t(z) dz - Q^t(w)
// for a constant test polynomial Q.
Mat2 reproducing_residual(const WeightParams& p, const Eigen::MatrixXcd& Ginv, int N,
                          Complex w, const Mat2& Q, const QuadratureSpec& spec = {});

// Correlation-kernel block through the reproducing-kernel route (the
// MVOP-form double integral with independent contours).
KernelBlock kernel_block_via_reproducing(const WeightParams& p, int N, BlackSite a,
                                         BlackSite b, const KernelOptions& opts = {});

// Monic MVOP of degree N: P_N(z) = (z-1)^N W_inf^{N/2} W(z)^{-N/2}.
Mat2 mvop_PN(const WeightParams& p, int N, Complex z);

// (1/2pi i) oint_{gamma_1} P_N(z) W^N(z) z^k dz  (0 for k = 0..N-1).
Mat2 mvop_orthogonality(const WeightParams& p, int N, int k,
                        const QuadratureSpec& spec = {});

// Q_{N-1}(z) for |z-1| > r, from the outside representation.
Mat2 mvop_QNminus1(const WeightParams& p, int N, Complex z,
                   const QuadratureSpec& spec = {});

// (1/2pi i) oint Q_{N-1}(z) W^N(z) z^k dz  (0 for k <= N-2, -I at k = N-1).
Mat2 qn_orthogonality(const WeightParams& p, int N, int k,
                      const QuadratureSpec& spec = {});

// Taylor coefficient (around z0) of a matrix-valued function, by contour
// extraction; used for polynomial degree checks.
Mat2 taylor_coefficient(const std::function<Mat2(Complex)>& f, Complex z0, double radius,
                        int order, const QuadratureSpec& spec = {});

// Solution of the residual Riemann-Hilbert problem: block lower-triangular
// 4x4 with lower-left block (1/2pi i) oint F(s) / ((s-1)^{2N} (s-z)) ds.
Eigen::Matrix4cd rh_solution_S(const WeightParams& p, int N, Complex z,
                               const QuadratureSpec& spec = {});

// The same Cauchy block computed over a deformed circle |s-1| = r_deform,
// used for boundary values of S on either side of gamma_1.
Mat2 rh_cauchy_block(const WeightParams& p, int N, Complex z, double r_deform,
                     const QuadratureSpec& spec = {});

}  // namespace aztec::oracle
