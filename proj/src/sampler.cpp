#include "aztec/sampler.hpp"

#include <sstream>

namespace aztec {

namespace {

constexpr uint8_t R = 'R', L = 'L', U = 'U', D = 'D';

// weight exponent (units of alpha) of the domino anchored at (i, j)
long long domino_alpha_exp(bool horizontal, int i, int j) {
  // horizontal pair member: a-weight in even columns; the full domino carries
  // a^{+-1} i.e. alpha^{+-1/2}; we track 2x the a-exponent / 2 = per-domino
  // alpha exponent in half units. To stay integral we count per-domino
  // exponents of a and divide by two at the end; here each domino's a-exp:
  return horizontal ? ((((i + 1) % 2) + 2) % 2 == 0 ? +1 : -1)
                    : ((((j + 1) % 2) + 2) % 2 == 0 ? -1 : +1);
}

}  // namespace

LatticeState initial_state(int order) {
  if (order < 2 || order % 2 != 0) throw InvalidInput("initial_state: order must be even >= 2");
  LatticeState st;
  st.order = order;
  st.cell.assign(st.side() * st.side(), 0);
  long long a_exp = 0;
  for (int j = -order; j < order; ++j) {
    // row widths are even; tile each row with horizontal dominoes
    int lo = -order, hi = order - 1;
    while (lo <= hi && !st.in_region(lo, j)) ++lo;
    while (hi >= lo && !st.in_region(hi, j)) --hi;
    for (int i = lo; i <= hi; i += 2) {
      st.cell[st.idx(i, j)] = R;
      st.cell[st.idx(i + 1, j)] = L;
      a_exp += domino_alpha_exp(true, i, j);
    }
  }
  st.alpha_exp = a_exp / 2;
  return st;
}

long long recompute_weight_exp(const LatticeState& st) {
  long long a_exp = 0;
  int covered = 0, cells = 0;
  for (int j = -st.order; j < st.order; ++j)
    for (int i = -st.order; i < st.order; ++i) {
      if (!st.in_region(i, j)) continue;
      ++cells;
      uint8_t c = st.cell[st.idx(i, j)];
      switch (c) {
        case R:
          if (st.at(i + 1, j) != L) throw DomainError("invalid tiling: broken horizontal");
          a_exp += domino_alpha_exp(true, i, j);
          covered += 2;
          break;
        case U:
          if (st.at(i, j + 1) != D) throw DomainError("invalid tiling: broken vertical");
          a_exp += domino_alpha_exp(false, i, j);
          covered += 2;
          break;
        case L:
          if (st.at(i - 1, j) != R) throw DomainError("invalid tiling: dangling L");
          break;
        case D:
          if (st.at(i, j - 1) != U) throw DomainError("invalid tiling: dangling D");
          break;
        default:
          throw DomainError("invalid tiling: uncovered cell");
      }
    }
  if (covered != cells) throw DomainError("invalid tiling: cover mismatch");
  return a_exp / 2;
}

void mcmc_run(LatticeState& st, const WeightParams& p, long long sweeps,
              std::mt19937_64& rng) {
  // candidate 2x2 corners (all blocks fully inside the region; non-flippable
  // proposals are rejected, keeping the proposal symmetric)
  std::vector<std::pair<int, int>> corners;
  for (int j = -st.order; j < st.order - 1; ++j)
    for (int i = -st.order; i < st.order - 1; ++i)
      if (st.in_region(i, j) && st.in_region(i + 1, j) && st.in_region(i, j + 1) &&
          st.in_region(i + 1, j + 1))
        corners.emplace_back(i, j);
  std::uniform_int_distribution<size_t> pick(0, corners.size() - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const double la = std::log(p.alpha);
  for (long long sweep = 0; sweep < sweeps; ++sweep) {
    for (size_t t = 0; t < corners.size(); ++t) {
      auto [i, j] = corners[pick(rng)];
      ++st.proposals;
      uint8_t c00 = st.cell[st.idx(i, j)];
      // horizontal pair -> vertical pair
      if (c00 == R && st.cell[st.idx(i, j + 1)] == R) {
        long long dk = (((j + 1) % 2 + 2) % 2 == 0 ? -1 : +1) -
                       (((i + 1) % 2 + 2) % 2 == 0 ? +1 : -1);
        if (dk >= 0 || unif(rng) < std::exp(la * dk)) {
          st.cell[st.idx(i, j)] = U;
          st.cell[st.idx(i, j + 1)] = D;
          st.cell[st.idx(i + 1, j)] = U;
          st.cell[st.idx(i + 1, j + 1)] = D;
          st.alpha_exp += dk;
          ++st.flips_accepted;
        }
      } else if (c00 == U && st.cell[st.idx(i + 1, j)] == U) {
        // vertical pair -> horizontal pair
        long long dk = (((i + 1) % 2 + 2) % 2 == 0 ? +1 : -1) -
                       (((j + 1) % 2 + 2) % 2 == 0 ? -1 : +1);
        if (dk >= 0 || unif(rng) < std::exp(la * dk)) {
          st.cell[st.idx(i, j)] = R;
          st.cell[st.idx(i + 1, j)] = L;
          st.cell[st.idx(i, j + 1)] = R;
          st.cell[st.idx(i + 1, j + 1)] = L;
          st.alpha_exp += dk;
          ++st.flips_accepted;
        }
      }
    }
  }
}

LatticeState mcmc_sample(const WeightParams& p, int N, long long sweeps, uint64_t seed) {
  if (N < 1) throw InvalidInput("mcmc_sample: N >= 1");
  LatticeState st = initial_state(2 * N);
  std::mt19937_64 rng(seed);
  mcmc_run(st, p, sweeps, rng);
  return st;
}

DensityField density_field(const LatticeState& st) {
  DensityField f;
  f.order = st.order;
  f.particle.assign(st.cell.size(), -1);
  long long ne = 0, no = 0, ce = 0, co = 0;
  int win = std::max(1, st.order / 4);
  for (int j = -st.order; j < st.order; ++j)
    for (int i = -st.order; i < st.order; ++i) {
      if (!st.in_region(i, j)) continue;
      bool black = (((i + j) % 2) + 2) % 2 == 1;
      if (!black) {
        f.particle[st.idx(i, j)] = 0;
        continue;
      }
      uint8_t c = st.cell[st.idx(i, j)];
      // particle iff the black square anchors its domino (West or South)
      int occ = (c == R || c == U) ? 1 : 0;
      f.particle[st.idx(i, j)] = static_cast<int8_t>(occ);
      if (std::abs(2 * i + 1) <= 2 * win && std::abs(2 * j + 1) <= 2 * win) {
        // parity of m+n equals the parity of the row j
        if ((((j % 2) + 2) % 2) == 0) {
          ++ce;
          ne += occ;
        } else {
          ++co;
          no += occ;
        }
      }
    }
  f.window_even = ce ? double(ne) / ce : 0.0;
  f.window_odd = co ? double(no) / co : 0.0;
  f.window_all = (ce + co) ? double(ne + no) / (ce + co) : 0.0;
  return f;
}

std::string encoding(const LatticeState& st) {
  std::string s;
  for (int j = -st.order; j < st.order; ++j)
    for (int i = -st.order; i < st.order; ++i)
      if (st.in_region(i, j)) s.push_back(char(st.cell[st.idx(i, j)]));
  return s;
}

std::string encode_tiling(const oracle::Tiling& t, int order) {
  LatticeState st;
  st.order = order;
  st.cell.assign(st.side() * st.side(), 0);
  for (const auto& d : t.dominoes) {
    if (d.horizontal) {
      st.cell[st.idx(d.i, d.j)] = R;
      st.cell[st.idx(d.i + 1, d.j)] = L;
    } else {
      st.cell[st.idx(d.i, d.j)] = U;
      st.cell[st.idx(d.i, d.j + 1)] = D;
    }
  }
  return encoding(st);
}

std::string render_svg(const LatticeState& st) {
  const double unit = std::max(1.0, 512.0 / st.side());
  double size = st.side() * unit;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  const char* blue = "#2b5fb8";
  const char* yellow = "#f0c64b";
  auto emit = [&](double x, double y, double w, double h, const char* color) {
    svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"" << color << "\" stroke=\"#ffffff\" stroke-width=\""
        << 0.08 * unit << "\"/>\n";
  };
  for (int j = -st.order; j < st.order; ++j)
    for (int i = -st.order; i < st.order; ++i) {
      if (!st.in_region(i, j)) continue;
      uint8_t c = st.cell[st.idx(i, j)];
      bool black = (((i + j) % 2) + 2) % 2 == 1;
      double x = (i + st.order) * unit;
      if (c == R) {
        // black-left = South (blue), white-left = North (yellow)
        double y = (st.order - 1 - j) * unit;
        emit(x, y, 2 * unit, unit, black ? blue : yellow);
      } else if (c == U) {
        // black-bottom = West (blue), white-bottom = East (yellow)
        double y = (st.order - 2 - j) * unit;
        emit(x, y, unit, 2 * unit, black ? blue : yellow);
      }
    }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace aztec
