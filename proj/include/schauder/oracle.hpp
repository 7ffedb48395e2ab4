#pragma once

// Slow, independent reference computations for cross-checking the main
// library. Nothing here includes or calls the other schauder headers.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace schauder::oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double pnorm(const Vec& v, double p) {
  double acc = 0.0;
  if (std::isinf(p)) {
    for (Eigen::Index i = 0; i < v.size(); ++i) acc = std::max(acc, std::abs(v[i]));
    return acc;
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]), p);
  return std::pow(acc, 1.0 / p);
}

/// Gauss-Jordan elimination with partial pivoting.
inline Mat direct_inverse(const Mat& t) {
  const Eigen::Index n = t.rows();
  if (n != t.cols()) throw OracleError("direct_inverse: matrix not square");
  Mat a = t;
  Mat inv = Mat::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    }
    if (std::abs(a(piv, col)) < 1e-300) throw OracleError("direct_inverse: singular matrix");
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      inv.row(piv).swap(inv.row(col));
    }
    const double d = a(col, col);
    a.row(col) /= d;
    inv.row(col) /= d;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  double norm_t = 0.0, norm_inv = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    norm_t = std::max(norm_t, t.col(j).cwiseAbs().sum());
    norm_inv = std::max(norm_inv, inv.col(j).cwiseAbs().sum());
  }
  if (norm_t * norm_inv > 1e12) throw OracleError("direct_inverse: condition estimate above 1e12");
  const Mat residual = t * inv - Mat::Identity(n, n);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, residual.row(i).cwiseAbs().sum());
  if (worst > 1e-10) throw OracleError("direct_inverse: residual above 1e-10");
  return inv;
}

/// |T|_{p->p} for p in {1, inf} as the maximum over the extreme points of
/// the unit ball: +-e_i for l^1, sign vectors for l^inf.
inline double ball_vertex_norm(const Mat& t, double p) {
  const Eigen::Index d = t.cols();
  double best = 0.0;
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < d; ++i) best = std::max(best, pnorm(t * Vec::Unit(d, i), 1.0));
    return best;
  }
  if (!std::isinf(p)) throw OracleError("ball_vertex_norm: p must be 1 or inf");
  if (d > 20) throw OracleError("ball_vertex_norm: dimension above 20");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    Vec s(d);
    for (Eigen::Index i = 0; i < d; ++i) s[i] = (mask >> i) & 1U ? -1.0 : 1.0;
    best = std::max(best, pnorm(t * s, p));
  }
  return best;
}

/// sqrt of the largest eigenvalue of T^T T.
inline double spectral_norm_eig(const Mat& t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(t.transpose() * t, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline double exact_norm(const Mat& t, double p) {
  if (p == 2.0) return spectral_norm_eig(t);
  return ball_vertex_norm(t, p);
}

/// max over all 2^M sign vectors of |sum_n s_n D_n|_{p->p}; every pattern is
/// summed from scratch.
inline double sign_enum_bilinear(const std::vector<Mat>& terms, double p) {
  const std::size_t m = terms.size();
  if (m > 20) throw OracleError("sign_enum_bilinear: more than 20 terms");
  if (!(p == 1.0 || p == 2.0 || std::isinf(p))) throw OracleError("sign_enum_bilinear: p must be 1, 2 or inf");
  if (m == 0) return 0.0;
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Mat s = Mat::Zero(terms[0].rows(), terms[0].cols());
    for (std::size_t n = 0; n < m; ++n) {
      if ((mask >> n) & 1U) {
        s -= terms[n];
      } else {
        s += terms[n];
      }
    }
    best = std::max(best, exact_norm(s, p));
  }
  return best;
}

/// Rank by Gaussian elimination with full pivoting; a pivot counts when it
/// exceeds rtol times the largest entry of the column-normalized input.
inline int elimination_rank(const Mat& m, double rtol = 1e-9) {
  Mat a = m;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double n = a.col(j).norm();
    if (n > 0.0) a.col(j) /= n;
  }
  const double scale = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0;
  int rank = 0;
  Eigen::Index rows = a.rows(), cols = a.cols();
  for (Eigen::Index k = 0; k < std::min(rows, cols); ++k) {
    Eigen::Index pr = k, pc = k;
    for (Eigen::Index i = k; i < rows; ++i) {
      for (Eigen::Index j = k; j < cols; ++j) {
        if (std::abs(a(i, j)) > std::abs(a(pr, pc))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (std::abs(a(pr, pc)) <= rtol * scale) break;
    a.row(k).swap(a.row(pr));
    a.col(k).swap(a.col(pc));
    for (Eigen::Index i = k + 1; i < rows; ++i) a.row(i) -= (a(i, k) / a(k, k)) * a.row(k);
    ++rank;
  }
  return rank;
}

/// Derivative-free random-restart hill climbing on |Tx|_p / |x|_p.
inline double dense_ascent_norm(const Mat& t, double p, int starts, std::uint64_t seed) {
  const Eigen::Index d = t.cols();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto ratio = [&](const Vec& x) {
    const double n = pnorm(x, p);
    return n == 0.0 ? 0.0 : pnorm(t * x, p) / n;
  };
  double best = 0.0;
  for (int s = 0; s < starts; ++s) {
    Vec x(d);
    for (Eigen::Index i = 0; i < d; ++i) x[i] = gauss(rng);
    x /= pnorm(x, p);
    double fx = ratio(x);
    double step = 0.5;
    for (int it = 0; it < 60 && step > 1e-9; ++it) {
      Vec y = x;
      for (Eigen::Index i = 0; i < d; ++i) y[i] += step * gauss(rng);
      const double ny = pnorm(y, p);
      if (ny == 0.0) continue;
      y /= ny;
      const double fy = ratio(y);
      if (fy > fx) {
        x = y;
        fx = fy;
      } else {
        step *= 0.8;
      }
    }
    best = std::max(best, fx);
  }
  return best;
}

}  // namespace schauder::oracle
