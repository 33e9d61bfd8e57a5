#include "aztec/oracle.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace aztec::oracle {

namespace {

// The Eynard-Mehta sum cancels through magnitudes of order
// ||T^m|| ||G^{-1}|| ||T^{2N-m'}||, which already at N = 4 wipes out double
// precision; the oracle therefore runs in 50-digit arithmetic throughout.
using mp = boost::multiprecision::cpp_bin_float_50;

int positive_mod2(int x) { return ((x % 2) + 2) % 2; }

struct MpMatrix {
  int n = 0;
  std::vector<mp> a;
  explicit MpMatrix(int n_) : n(n_), a(size_t(n_) * n_, mp(0)) {}
  mp& operator()(int i, int j) { return a[size_t(i) * n + j]; }
  const mp& operator()(int i, int j) const { return a[size_t(i) * n + j]; }

  MpMatrix operator*(const MpMatrix& o) const {
    MpMatrix r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const mp& v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < n; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }

  static MpMatrix identity(int n_) {
    MpMatrix r(n_);
    for (int i = 0; i < n_; ++i) r(i, i) = 1;
    return r;
  }
};

// LU decomposition with partial pivoting; returns det and the inverse.
mp invert(MpMatrix m, MpMatrix& inv) {
  const int n = m.n;
  inv = MpMatrix::identity(n);
  mp det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (abs(m(r, col)) > abs(m(piv, col))) piv = r;
    if (m(piv, col) == 0) throw ConvergenceError("TransferOracle: Gram matrix singular");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
      det = -det;
    }
    det *= m(col, col);
    mp d = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      mp f = m(r, col);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return det;
}

}  // namespace

struct TransferOracle::Impl {
  std::vector<MpMatrix> Tpow;
  MpMatrix Ginv{1};
};

TransferOracle::TransferOracle(const WeightParams& p, int N, int margin) {
  if (N < 1 || N > 6) throw InvalidInput("TransferOracle: N in [1, 6]");
  N_ = N;
  lo_ = -2 * N - margin;
  hi_ = 4 * N + margin;
  const int W = hi_ - lo_ + 1;
  MpMatrix T(W);
  mp alpha = p.alpha, beta = 1 / mp(p.alpha);
  for (int x = lo_; x <= hi_; ++x) {
    mp wgt = positive_mod2(x) == 0 ? alpha : beta;
    for (int y = lo_; y <= hi_; ++y) {
      // one Bernoulli step (weight alpha/beta by row parity) followed by a
      // geometric run of down steps: T(x,y) = w(x) * #{h in {x, x+1} : y <= h}
      int cnt = (y <= x) ? 2 : (y == x + 1 ? 1 : 0);
      if (cnt) T(x - lo_, y - lo_) = wgt * cnt;
    }
  }
  impl_ = std::make_shared<Impl>();
  impl_->Tpow.reserve(2 * N + 1);
  impl_->Tpow.push_back(MpMatrix::identity(W));
  for (int k = 1; k <= 2 * N; ++k) impl_->Tpow.push_back(impl_->Tpow.back() * T);

  MpMatrix G(2 * N);
  for (int i = 0; i < 2 * N; ++i)
    for (int j = 0; j < 2 * N; ++j) G(i, j) = impl_->Tpow[2 * N](i - lo_, j - lo_);
  MpMatrix Ginv(2 * N);
  mp det = invert(G, Ginv);
  impl_->Ginv = Ginv;
  detG_ = det.convert_to<double>();
}

double TransferOracle::kernel_path(int m, int u, int mp_, int up) const {
  if (m < 0 || m > 2 * N_ || mp_ < 0 || mp_ > 2 * N_)
    throw InvalidInput("TransferOracle: level out of range");
  if (u < lo_ || u > hi_ || up < lo_ || up > hi_)
    throw InvalidInput("TransferOracle: height out of window");
  mp single = 0;
  if (m > mp_) single = impl_->Tpow[m - mp_](up - lo_, u - lo_);
  mp sum = 0;
  for (int i = 0; i < 2 * N_; ++i) {
    const mp& ti = impl_->Tpow[m](i - lo_, u - lo_);
    if (ti == 0) continue;
    for (int j = 0; j < 2 * N_; ++j)
      sum += ti * impl_->Ginv(j, i) * impl_->Tpow[2 * N_ - mp_](up - lo_, j - lo_);
  }
  return mp(sum - single).convert_to<double>();
}

double TransferOracle::kernel_site(BlackSite x, BlackSite y) const {
  return kernel_path(x.m, x.m + x.n, y.m, y.m + y.n);
}

Eigen::MatrixXd TransferOracle::gram_section() const {
  Eigen::MatrixXd G(2 * N_, 2 * N_);
  for (int i = 0; i < 2 * N_; ++i)
    for (int j = 0; j < 2 * N_; ++j)
      G(i, j) = impl_->Tpow[2 * N_](i - lo_, j - lo_).convert_to<double>();
  return G;
}

}  // namespace aztec::oracle
