#pragma once

// Metropolis sampler over 2x2 rotation flips of the two-periodic measure,
// with density diagnostics and an SVG renderer in the standard coloring
// (West/South blue, East/North yellow).

#include "aztec/oracle.hpp"

#include <random>
#include <string>

namespace aztec {

// Domino configuration on a diamond of size `order` (= 2N). Each cell
// stores the direction of its partner; 'R'/'U' mark the anchor (left or
// bottom) cell of a domino.
struct LatticeState {
  int order = 0;
  std::vector<uint8_t> cell;   // 0 outside region; else one of R L U D
  long long alpha_exp = 0;     // cached weight exponent: w = alpha^{alpha_exp}
  uint64_t flips_accepted = 0;
  uint64_t proposals = 0;

  int side() const { return 2 * order; }
  int idx(int i, int j) const { return (j + order) * side() + (i + order); }
  bool in_region(int i, int j) const {
    return std::abs(2 * i + 1) + std::abs(2 * j + 1) <= 2 * order;
  }
  uint8_t at(int i, int j) const { return in_region(i, j) ? cell[idx(i, j)] : 0; }
};

// All-horizontal reference tiling.
LatticeState initial_state(int order);

// Runs `sweeps` Metropolis sweeps (one sweep = one proposal per candidate
// 2x2 block) from the reference state; deterministic in the seed.
LatticeState mcmc_sample(const WeightParams& p, int N, long long sweeps, uint64_t seed);

// In-place continuation of a chain.
void mcmc_run(LatticeState& st, const WeightParams& p, long long sweeps, std::mt19937_64& rng);

// Weight exponent recomputed from scratch; throws if the configuration is
// not a valid tiling.
long long recompute_weight_exp(const LatticeState& st);

struct DensityField {
  int order = 0;
  std::vector<int8_t> particle;  // per cell: 1 = occupied black square, 0 = not, -1 = outside
  double window_even = 0.0;      // central-window density on the m+n even sublattice
  double window_odd = 0.0;
  double window_all = 0.0;
};

// Particle indicator per black square (black squares of West/South dominoes)
// plus central-window averages; the window is the middle half of the diamond.
DensityField density_field(const LatticeState& st);

// Canonical string encoding (region scan order) for frequency tests.
std::string encoding(const LatticeState& st);
std::string encode_tiling(const oracle::Tiling& t, int order);

// SVG rendering, one rect per domino.
std::string render_svg(const LatticeState& st);

}  // namespace aztec
