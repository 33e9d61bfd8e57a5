#include "aztec/oracle.hpp"

#include <algorithm>
#include <set>

namespace aztec::oracle {

namespace {

// Black cells carry i + j odd (calibrated against the figures: the black
// square of a West domino is its bottom cell, of a South domino its left
// cell, of an East domino its top cell, of a North domino its right cell).
bool is_black(int i, int j) { return ((i + j) % 2 + 2) % 2 == 1; }

// Weight exponent in units of a (b = 1/a): horizontal dominoes weigh a in
// even columns, vertical dominoes weigh b in even rows. A horizontal domino
// with left cell (i, j) sits in column i + 1; a vertical one with bottom
// cell (i, j) sits in row j + 1.
long long domino_a_exp(bool horizontal, int i, int j) {
  if (horizontal) return (((i + 1) % 2 + 2) % 2 == 0) ? +1 : -1;
  return (((j + 1) % 2 + 2) % 2 == 0) ? -1 : +1;
}

Domino make_domino(bool horizontal, int i, int j) {
  Domino d;
  d.horizontal = horizontal;
  d.i = i;
  d.j = j;
  if (horizontal) {
    if (is_black(i, j)) {
      d.type = DominoType::South;
      d.bi = i;
      d.bj = j;
    } else {
      d.type = DominoType::North;
      d.bi = i + 1;
      d.bj = j;
    }
  } else {
    if (is_black(i, j)) {
      d.type = DominoType::West;
      d.bi = i;
      d.bj = j;
    } else {
      d.type = DominoType::East;
      d.bi = i;
      d.bj = j + 1;
    }
  }
  return d;
}

struct CoverState {
  const Region* region;
  std::set<std::pair<int, int>> covered;
  std::vector<Domino> placed;
  std::vector<Tiling>* out;

  void run() {
    auto it = std::find_if(region->cells.begin(), region->cells.end(),
                           [&](auto c) { return !covered.count(c); });
    if (it == region->cells.end()) {
      Tiling t;
      t.dominoes = placed;
      for (const Domino& d : t.dominoes) t.a_exp += domino_a_exp(d.horizontal, d.i, d.j);
      out->push_back(std::move(t));
      return;
    }
    auto [i, j] = *it;
    // horizontal partner
    if (region->contains(i + 1, j) && !covered.count({i + 1, j})) {
      covered.insert({i, j});
      covered.insert({i + 1, j});
      placed.push_back(make_domino(true, i, j));
      run();
      placed.pop_back();
      covered.erase({i, j});
      covered.erase({i + 1, j});
    }
    // vertical partner
    if (region->contains(i, j + 1) && !covered.count({i, j + 1})) {
      covered.insert({i, j});
      covered.insert({i, j + 1});
      placed.push_back(make_domino(false, i, j));
      run();
      placed.pop_back();
      covered.erase({i, j});
      covered.erase({i, j + 1});
    }
  }
};

}  // namespace

bool Region::contains(int i, int j) const {
  return std::abs(2 * (i - ci) + 1) + std::abs(2 * (j - cj) + 1) <= 2 * order;
}

Region diamond_region(int order, int ci, int cj) {
  Region r;
  r.order = order;
  r.ci = ci;
  r.cj = cj;
  for (int j = cj - order; j < cj + order; ++j)
    for (int i = ci - order; i < ci + order; ++i)
      if (r.contains(i, j)) r.cells.emplace_back(i, j);
  return r;
}

double WeightedSum::evaluate(double alpha) const {
  // exponent-bucketed evaluation; exact for dyadic-rational alpha at this
  // scale, otherwise accurate to an ulp or two
  long double total = 0.0L;
  for (auto [k, c] : count_by_exp) total += (long double)c * powl((long double)alpha, (long double)k);
  return (double)total;
}

std::vector<Tiling> enumerate_region(const Region& region) {
  std::vector<Tiling> out;
  CoverState st;
  st.region = &region;
  st.out = &out;
  st.run();
  return out;
}

Enumeration enumerate_tilings(int N) {
  if (N < 1 || N > 2) throw InvalidInput("enumerate_tilings: exhaustive scale is N in {1, 2}");
  Enumeration e;
  e.N = N;
  e.region = diamond_region(2 * N);
  e.tilings = enumerate_region(e.region);
  return e;
}

double Enumeration::partition_function(double alpha) const {
  WeightedSum z;
  for (const Tiling& t : tilings) z.add(t.a_exp / 2);
  return z.evaluate(alpha);
}

long long matching_count(const Region& region) {
  // column-by-column broken-profile recursion, independent of the
  // exact-cover enumerator
  int jmin = region.cj - region.order, jmax = region.cj + region.order - 1;
  int imin = region.ci - region.order, imax = region.ci + region.order - 1;
  int H = jmax - jmin + 1;
  if (H > 62) throw InvalidInput("matching_count: region too tall");
  auto cell_in = [&](int i, int j) { return region.contains(i, j); };

  // mask bit j-jmin set = cell (i, j) already covered by a horizontal domino
  // protruding from column i-1
  std::map<uint64_t, long long> cur;
  cur[0] = 1;
  for (int i = imin; i <= imax + 1; ++i) {
    std::map<uint64_t, long long> next;
    // fill column i given incoming protrusion mask
    for (auto [mask, cnt] : cur) {
      // recursively place dominoes within column i
      struct Fill {
        int i, jmin, jmax;
        std::function<bool(int, int)> in;
        std::map<uint64_t, long long>* next;
        long long cnt;
        void go(int j, uint64_t covered, uint64_t protrude) {
          if (j > jmax) {
            (*next)[protrude] += cnt;
            return;
          }
          int bit = j - jmin;
          if (!in(i, j) || (covered >> bit & 1)) {
            go(j + 1, covered, protrude);
            return;
          }
          // vertical domino (i,j)-(i,j+1)
          if (j + 1 <= jmax && in(i, j + 1) && !(covered >> (bit + 1) & 1))
            go(j + 2, covered | (3ull << bit), protrude);
          // horizontal domino into column i+1
          if (in(i + 1, j)) go(j + 1, covered | (1ull << bit), protrude | (1ull << bit));
        }
      } fill{i, jmin, jmax, cell_in, &next, cnt};
      fill.go(jmin, mask, 0);
    }
    cur = std::move(next);
  }
  auto it = cur.find(0);
  return it == cur.end() ? 0 : it->second;
}

std::vector<BlackSite> tiling_to_particles(const Tiling& t, int N) {
  // Black particle of a West/South domino at cell (i, j):
  //   m = (i + j + 2N + 1) / 2,  n = (j - i + 2N - 1) / 2.
  // Calibrated so that level 0 is full, level 2N empty, level m holds 2N - m
  // particles, and all one-point functions match the contour kernel.
  std::vector<BlackSite> out;
  for (const Domino& d : t.dominoes) {
    if (d.type != DominoType::West && d.type != DominoType::South) continue;
    out.push_back({(d.bi + d.bj + 2 * N + 1) / 2, (d.bj - d.bi + 2 * N - 1) / 2});
  }
  return out;
}

std::vector<HalfSite> tiling_to_extended_particles(const Tiling& t, int N) {
  std::vector<HalfSite> out;
  for (const Domino& d : t.dominoes) {
    if (d.type != DominoType::West && d.type != DominoType::South) continue;
    int m2 = d.bi + d.bj + 2 * N + 1;  // 2m
    int n2 = d.bj - d.bi + 2 * N - 1;  // 2n
    out.push_back({m2, n2});
    // white square: above the black cell for West, right of it for South
    if (d.type == DominoType::West)
      out.push_back({m2 + 1, n2 + 1});
    else
      out.push_back({m2 + 1, n2 - 1});
  }
  return out;
}

double empirical_correlation(const Enumeration& e, const WeightParams& p,
                             const std::vector<BlackSite>& S) {
  WeightedSum zsum, hit;
  for (const Tiling& t : e.tilings) {
    zsum.add(t.a_exp / 2);
    auto parts = tiling_to_particles(t, e.N);
    auto has = [&](const BlackSite& s) {
      return std::any_of(parts.begin(), parts.end(),
                         [&](const BlackSite& q) { return q.m == s.m && q.n == s.n; });
    };
    if (std::all_of(S.begin(), S.end(), has)) hit.add(t.a_exp / 2);
  }
  return hit.evaluate(p.alpha) / zsum.evaluate(p.alpha);
}

double empirical_extended_one_point(const Enumeration& e, const WeightParams& p, HalfSite s) {
  WeightedSum zsum, hit;
  for (const Tiling& t : e.tilings) {
    zsum.add(t.a_exp / 2);
    auto parts = tiling_to_extended_particles(t, e.N);
    if (std::any_of(parts.begin(), parts.end(),
                    [&](const HalfSite& q) { return q.twom == s.twom && q.twon == s.twon; }))
      hit.add(t.a_exp / 2);
  }
  return hit.evaluate(p.alpha) / zsum.evaluate(p.alpha);
}

double double_diamond_partition(const WeightParams& p, int N) {
  Enumeration first = enumerate_tilings(N);
  // the size-(2N-1) diamond attached along the south-east side of the first,
  // centered at (2N, -2N) in the shared cell coordinates
  Region attached = diamond_region(2 * N - 1, 2 * N, -2 * N);
  std::vector<Tiling> second = enumerate_region(attached);
  WeightedSum z2;
  for (const Tiling& t : second) z2.add(t.a_exp / 2);
  return first.partition_function(p.alpha) * z2.evaluate(p.alpha);
}

}  // namespace aztec::oracle
