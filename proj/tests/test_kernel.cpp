#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aztec/oracle.hpp"

#include <cmath>
#include <random>

using namespace aztec;

TEST_CASE("level 0 is full and level 2N is empty") {
  for (double alpha : {1.0, 2.0}) {
    WeightParams p(alpha);
    for (int N : {2, 4}) {
      for (int n = 0; n < 2 * N; ++n) {
        double v = kernel_entry(p, N, {0, n}, {0, n});
        CHECK(std::abs(v - 1.0) < 1e-10);
      }
      for (int n = 0; n < 2 * N; ++n) {
        double v = kernel_entry(p, N, {2 * N, n}, {2 * N, n});
        CHECK(std::abs(v) < 1e-10);
      }
    }
  }
}

TEST_CASE("kernel blocks are real and bounded on the diagonal") {
  WeightParams p(2.0);
  int N = 4;
  for (int m = 0; m <= 2 * N; ++m)
    for (int n = 0; n <= 2 * N - 1; ++n) {
      if ((m + n) % 2 != 0) continue;
      KernelBlock b = kernel_block(p, N, {m, n}, {m, n});
      CHECK(b.imag_residual < 1e-8);
      for (int d : {0, 1}) {
        double v = b.entry(d, d);
        CHECK(v > -1e-8);
        CHECK(v < 1.0 + 1e-8);
      }
    }
}

TEST_CASE("kernel matches exhaustive enumeration at N=2 everywhere") {
  for (double alpha : {1.0, 2.0, 3.5}) {
    WeightParams p(alpha);
    oracle::Enumeration e = oracle::enumerate_tilings(2);
    const int N = 2;
    // all one-point functions
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; n <= 3; ++n) {
        double emp = oracle::empirical_correlation(e, p, {{m, n}});
        double ker = kernel_entry(p, N, {m, n}, {m, n});
        CHECK(std::abs(emp - ker) < 1e-8);
      }
    // all two-point functions
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; n <= 3; ++n)
        for (int mp = m; mp <= 4; ++mp)
          for (int np = 0; np <= 3; ++np) {
            if (mp == m && np <= n) continue;
            BlackSite x{m, n}, y{mp, np};
            double emp = oracle::empirical_correlation(e, p, {x, y});
            double det = correlation_probability(p, N, {x, y});
            CHECK(std::abs(emp - det) < 1e-8);
          }
  }
}

TEST_CASE("kernel matches the transfer-matrix oracle entrywise") {
  for (double alpha : {1.0, 2.0, 3.5}) {
    WeightParams p(alpha);
    for (int N : {2, 4}) {
      oracle::TransferOracle to(p, N);
      std::mt19937_64 rng(11 + N);
      std::uniform_int_distribution<int> dm(0, 2 * N), dn(0, 2 * N - 1);
      for (int rep = 0; rep < 50; ++rep) {
        BlackSite x{dm(rng), dn(rng)}, y{dm(rng), dn(rng)};
        double a = kernel_entry(p, N, x, y);
        double b = to.kernel_site(x, y);
        CHECK(std::abs(a - b) < 1e-8);
      }
    }
  }
}

TEST_CASE("contour radius changes leave the kernel invariant") {
  WeightParams p(2.0);
  KernelOptions o1, o2, o3;
  o2.gamma01_radius = 1.6;
  o3.gamma01_radius = 2.4;
  o3.gamma1_radius = 0.35;
  KernelBlock a = kernel_block(p, 4, {3, 3}, {5, 3}, o1);
  KernelBlock b = kernel_block(p, 4, {3, 3}, {5, 3}, o2);
  KernelBlock c = kernel_block(p, 4, {3, 3}, {5, 3}, o3);
  CHECK((a.block - b.block).max_abs() < 1e-9);
  CHECK((a.block - c.block).max_abs() < 1e-9);
}

TEST_CASE("extended kernel reproduces the plain kernel at integer sites") {
  WeightParams p(2.0);
  const int N = 2;
  for (auto [m, n, mp, np] : {std::array<int, 4>{1, 1, 2, 2}, {2, 0, 1, 3}, {3, 1, 3, 1}}) {
    KernelBlock plain = kernel_block(p, N, {m, n}, {mp, np});
    KernelBlock ext = kernel_block_extended(p, N, {2 * m, 2 * n}, {2 * mp, 2 * np});
    CHECK((plain.block - ext.block).max_abs() < 1e-9);
  }
}

TEST_CASE("extended kernel one-point functions match white-square frequencies") {
  WeightParams p(2.0);
  const int N = 2;
  oracle::Enumeration e = oracle::enumerate_tilings(N);
  // a sample of white sites (both doubled coordinates odd)
  for (auto [m2, n2] : {std::array<int, 2>{1, 3}, {3, 1}, {3, 5}, {5, 3}, {5, 1}, {7, 1}}) {
    double freq = oracle::empirical_extended_one_point(e, p, {m2, n2});
    // dispatch into the enclosing block: base twon with (m+n) even
    int nb2 = ((m2 + n2) % 4 == 0) ? n2 : n2 - 2;
    KernelBlock blk = kernel_block_extended(p, N, {m2, nb2}, {m2, nb2});
    double ker = blk.entry((n2 - nb2) / 2, (n2 - nb2) / 2);
    CHECK(std::abs(freq - ker) < 1e-8);
  }
}

TEST_CASE("stable evaluator agrees with plain and with the oracle") {
  WeightParams p(2.0);
  {
    const int N = 2;
    oracle::TransferOracle to(p, N);
    for (auto [m, n, mp, np] :
         {std::array<int, 4>{1, 1, 1, 1}, {2, 2, 2, 2}, {1, 1, 2, 2}, {3, 1, 1, 1}}) {
      KernelBlock st = kernel_block_stable(p, N, {m, n}, {mp, np});
      CHECK(st.imag_residual < 1e-8);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double ora = to.kernel_site({m, n + j}, {mp, np + i});
          CHECK(std::abs(st.block(i, j).real() - ora) < 1e-8);
        }
    }
  }
  {
    const int N = 8;
    KernelBlock plain = kernel_block(p, N, {8, 8}, {8, 8});
    KernelBlock stab = kernel_block_stable(p, N, {8, 8}, {8, 8});
    CHECK((plain.block - stab.block).max_abs() < 1e-8);
    KernelBlock plain2 = kernel_block(p, N, {7, 9}, {9, 7});
    KernelBlock stab2 = kernel_block_stable(p, N, {7, 9}, {9, 7});
    CHECK((plain2.block - stab2.block).max_abs() < 1e-8);
  }
}

TEST_CASE("gas kernel: diagonal density, parity bracket, decay") {
  WeightParams p(2.0);
  // diagonal entries equal the density at the two parities
  Mat2 diag = gas_block(p, {0, 0});
  double de = gas_density(p, 0), dodd = gas_density(p, 1);
  CHECK(std::abs(diag(0, 0).real() - de) < 1e-10);
  CHECK(std::abs(diag(1, 1).real() - dodd) < 1e-10);
  CHECK(de > 0.5);
  CHECK(de < 1.0);
  CHECK(dodd > 0.0);
  CHECK(dodd < 0.5);
  CHECK(std::abs(de + dodd - 1.0) < 1e-12);

  // exponential decay in dn: log-norm decreases linearly
  std::vector<double> lognorms;
  for (int dn = 2; dn <= 20; dn += 2)
    lognorms.push_back(std::log(gas_block(p, {0, dn}).max_abs()));
  for (size_t i = 0; i + 1 < lognorms.size(); ++i) CHECK(lognorms[i + 1] < lognorms[i]);
  double first = lognorms[1] - lognorms[0];
  double last = lognorms[lognorms.size() - 1] - lognorms[lognorms.size() - 2];
  CHECK(std::abs(first - last) < 0.35 * std::abs(first));  // roughly linear slope

  // decay in dm as well
  CHECK(gas_block(p, {8, 0}).max_abs() < 0.1 * gas_block(p, {2, 0}).max_abs());
}

TEST_CASE("gas kernel: contour radius and orientation independence") {
  WeightParams p(2.0);
  KernelOptions inner, outer;
  inner.gas_radius = 0.8;
  outer.gas_radius = 1.9;
  for (auto off : {GasOffsets{0, 0}, {2, 0}, {1, 1}, {-1, 1}}) {
    Mat2 a = gas_block(p, off, inner);
    Mat2 b = gas_block(p, off, outer);
    CHECK((a - b).max_abs() < 1e-9);
  }
}

TEST_CASE("gas kernel at alpha=1") {
  WeightParams p(1.0);
  Mat2 diag = gas_block(p, {0, 0});
  CHECK(std::abs(diag(0, 0).real() - 0.5) < 1e-14);
  CHECK(std::abs(diag(1, 1).real() - 0.5) < 1e-14);
  CHECK(gas_density(p, 0) == 0.5);
  CHECK_THROWS_AS(gas_block(p, {2, 0}), DomainError);
}

TEST_CASE("gas density against the elliptic-integral closed form") {
  for (double alpha : {1.5, 2.0, 3.0}) {
    WeightParams p(alpha);
    double corr = gas_density(p, 0) - 0.5;
    CHECK(corr > 0.0);
    CHECK(corr < 0.5);
    // (alpha-beta)/(pi alpha) K(beta/alpha) via the standard complete
    // elliptic integral
    double k = p.beta / p.alpha;
    double K = std::comp_ellint_1(k);
    double expect = (p.alpha - p.beta) * K / (kPi * p.alpha);
    CHECK(std::abs(corr - expect) < 1e-10);
  }
}

TEST_CASE("correlation probabilities: basic laws and error paths") {
  WeightParams p(2.0);
  CHECK(std::abs(correlation_probability(p, 2, {{0, 0}}) - 1.0) < 1e-10);
  CHECK(std::abs(correlation_probability(p, 2, {{4, 1}})) < 1e-10);
  CHECK_THROWS_AS(correlation_probability(p, 2, {{1, 1}, {1, 1}}), InvalidInput);
  CHECK_THROWS_AS(kernel_entry(p, 2, {5, 0}, {0, 0}), InvalidInput);
  CHECK_THROWS_AS(kernel_block(p, 3, {0, 0}, {0, 0}), InvalidInput);
  CHECK_THROWS_AS(kernel_block(p, 2, {1, 0}, {0, 0}), InvalidInput);
}

TEST_CASE("reproducing-kernel route equals the contour kernel at N=2") {
  WeightParams p(2.0);
  const int N = 2;
  for (auto [m, n, mp, np] : {std::array<int, 4>{1, 1, 1, 1}, {2, 0, 2, 2}, {3, 1, 1, 1},
                              {1, 3, 3, 1}}) {
    KernelBlock direct = kernel_block(p, N, {m, n}, {mp, np});
    KernelBlock route = oracle::kernel_block_via_reproducing(p, N, {m, n}, {mp, np});
    CHECK((direct.block - route.block).max_abs() < 1e-8);
  }
}

TEST_CASE("gas limit: stabilized remainder decays geometrically at the center") {
  WeightParams p(2.0);
  std::vector<double> norms;
  for (int N : {8, 16, 24, 32}) {
    Mat2 rem = kernel_gas_remainder(p, N, {N, N}, {N, N});
    norms.push_back(rem.max_abs());
  }
  for (size_t i = 0; i + 1 < norms.size(); ++i) CHECK(norms[i + 1] < 0.5 * norms[i]);
}
