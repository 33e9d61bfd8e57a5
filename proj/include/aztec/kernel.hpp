#pragma once

// Finite-N correlation kernel of the two-periodic Aztec diamond: the plain
// double-contour form, the extended (half-integer level) form, the
// numerically stabilized gas + remainder form, the translation-invariant
// gas kernel, and determinantal correlations.

#include "aztec/algebra.hpp"
#include "aztec/quadrature.hpp"

#include <optional>
#include <vector>

namespace aztec {

// Black-square site (m, n) in B_N = {0..2N} x {0..2N-1}; m is the level.
struct BlackSite {
  int m = 0;
  int n = 0;
};

// Site of B_N u W_N in doubled coordinates: (m, n) = (twom/2, twon/2).
// White squares have both coordinates odd in doubled form.
struct HalfSite {
  int twom = 0;
  int twon = 0;
};

struct GasOffsets {
  int dm = 0;
  int dn = 0;
};

// 2x2 block of kernel values at even-parity base sites per the layout
//   (0,0) -> K(m,n;m',n')    (0,1) -> K(m,n+1;m',n')
//   (1,0) -> K(m,n;m',n'+1)  (1,1) -> K(m,n+1;m',n'+1).
// The kernel is real; the imaginary residue is kept for diagnostics.
struct KernelBlock {
  Mat2 block;             // real parts
  double imag_residual = 0.0;
  int m = 0, n = 0, mp = 0, np = 0;  // base sites (doubled coords for extended)

  double entry(int second_offset, int first_offset) const {
    return block(second_offset, first_offset).real();
  }
};

struct KernelOptions {
  QuadratureSpec quad{};
  // 0 = default radius max(2, 1.25) clipped against the left cut.
  double gamma01_radius = 0.0;
  double gamma1_radius = 0.5;
  // 0 = pick |z| = r with r < 1 for dn >= 0 and r > 1 for dn < 0.
  double gas_radius = 0.0;
  double separation_guard = 1e-3;
};

// Default contours of the plain kernel formula.
CircleContour default_gamma1(const KernelOptions& opts);
CircleContour default_gamma01(const WeightParams& p, const KernelOptions& opts);

// Plain finite-N kernel block (single rational contour integral plus the
// double contour integral over gamma_{0,1} x gamma_1). Requires N even and
// m+n, m'+n' even.
KernelBlock kernel_block(const WeightParams& p, int N, BlackSite a, BlackSite b,
                         const KernelOptions& opts = {});

// Extended kernel on B_N u W_N (doubled coordinates; twom+twon must be even
// after halving, i.e. (twom+twon) % 4 == 0 ... see validation). At integer
// sites this reproduces kernel_block exactly.
KernelBlock kernel_block_extended(const WeightParams& p, int N, HalfSite a, HalfSite b,
                                  const KernelOptions& opts = {});

// Stabilized evaluation: gas kernel plus the two remainder double integrals
// over a circle through the z-saddle and the contour wrapping the negative
// real axis. Exact rewrite of kernel_block (requires n' <= 2N-2); remains
// accurate when the plain form loses all digits to cancellation.
KernelBlock kernel_block_stable(const WeightParams& p, int N, BlackSite a, BlackSite b,
                                const KernelOptions& opts = {});

// The remainder K_N - K_gas alone (the two stabilized double integrals).
Mat2 kernel_gas_remainder(const WeightParams& p, int N, BlackSite a, BlackSite b,
                          const KernelOptions& opts = {});

// Scalar kernel entry with parity dispatch into the enclosing block.
double kernel_entry(const WeightParams& p, int N, BlackSite x, BlackSite y,
                    const KernelOptions& opts = {});

// Translation-invariant gas kernel block at site offsets (dm, dn), dm+dn even.
Mat2 gas_block(const WeightParams& p, GasOffsets off, const KernelOptions& opts = {});

// Gas-phase one-point density: 1/2 + (-1)^{m+n} correction; parity = (m+n) mod 2.
double gas_density(const WeightParams& p, int parity);

// P[S subset X] = det[K_N(x,y)] over the listed (distinct) sites.
double correlation_probability(const WeightParams& p, int N, const std::vector<BlackSite>& sites,
                               const KernelOptions& opts = {});

}  // namespace aztec
