#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "schauder/bound.hpp"
#include "schauder/error.hpp"

namespace schauder {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Operator = Eigen::MatrixXd;
using Coords = Eigen::VectorXd;

/// Exponent p of an l^p norm, p in [1, inf]. Infinity is stored as the IEEE
/// infinity, never as a large finite number.
class Exponent {
 public:
  Exponent() = default;

  explicit Exponent(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0) {
      throw PreconditionError("exponent p must satisfy p >= 1, got " + std::to_string(p));
    }
  }

  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

  double value() const { return p_; }
  bool is_infinite() const { return std::isinf(p_); }
  bool is_one() const { return p_ == 1.0; }
  bool is_two() const { return p_ == 2.0; }

  /// p in {1, 2, inf}: the induced operator norm has a closed form.
  bool has_closed_form() const { return is_one() || is_two() || is_infinite(); }

  /// Hoelder conjugate q with 1/p + 1/q = 1.
  Exponent dual() const {
    if (is_one()) return infinity();
    if (is_infinite()) return Exponent(1.0);
    if (is_two()) return Exponent(2.0);
    return Exponent(p_ / (p_ - 1.0));
  }

  /// 1/p, with 1/inf = 0.
  double reciprocal() const { return is_infinite() ? 0.0 : 1.0 / p_; }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.p_ == b.p_; }

 private:
  double p_ = 2.0;
};

/// l^p norm of a coordinate vector. General p is evaluated on the
/// max-scaled vector to stay clear of overflow.
inline double lp_norm(const Eigen::Ref<const Coords>& v, Exponent p) {
  if (v.size() == 0) return 0.0;
  if (p.is_infinite()) return v.cwiseAbs().maxCoeff();
  if (p.is_one()) return v.cwiseAbs().sum();
  if (p.is_two()) return v.norm();
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / scale, p.value());
  return scale * std::pow(acc, 1.0 / p.value());
}

// An element of E = R^d.
struct Vector {
  Coords coords;

  Vector() = default;
  explicit Vector(Coords c) : coords(std::move(c)) {}
  Vector(std::initializer_list<double> xs) : coords(static_cast<Index>(xs.size())) {
    std::copy(xs.begin(), xs.end(), coords.data());
  }

  Index size() const { return coords.size(); }
};

// An element of E*, acting by the coordinate dot product.
struct Functional {
  Coords coords;

  Functional() = default;
  explicit Functional(Coords c) : coords(std::move(c)) {}
  Functional(std::initializer_list<double> xs) : coords(static_cast<Index>(xs.size())) {
    std::copy(xs.begin(), xs.end(), coords.data());
  }

  Index size() const { return coords.size(); }

  double operator()(const Vector& v) const { return coords.dot(v.coords); }

  /// The functional x -> f(op x).
  Functional compose(const Operator& op) const { return Functional(op.transpose() * coords); }
};

/// Tuning of the general-p operator norm enclosure.
struct NormOptions {
  std::uint64_t seed = 0;
  int random_starts = 8;
  int max_iterations = 100;
};

/// E = R^d with the l^p norm; its dual carries the l^q norm.
class PNormSpace {
 public:
  PNormSpace(Index dim, Exponent p) : dim_(dim), p_(p) {
    if (dim < 1) throw PreconditionError("space dimension must be at least 1");
  }

  Index dim() const { return dim_; }
  Exponent p() const { return p_; }
  Exponent q() const { return p_.dual(); }

  void check(const Vector& v) const { check_size(v.size(), "vector"); }
  void check(const Functional& f) const { check_size(f.size(), "functional"); }
  void check(const Operator& op) const {
    if (op.rows() != dim_ || op.cols() != dim_) {
      throw DimensionMismatch("operator is " + std::to_string(op.rows()) + "x" +
                              std::to_string(op.cols()) + ", space has dimension " +
                              std::to_string(dim_));
    }
  }

  friend bool operator==(const PNormSpace& a, const PNormSpace& b) {
    return a.dim_ == b.dim_ && a.p_ == b.p_;
  }

 private:
  void check_size(Index n, const char* what) const {
    if (n != dim_) {
      throw DimensionMismatch(std::string(what) + " has " + std::to_string(n) +
                              " coordinates, space has dimension " + std::to_string(dim_));
    }
  }

  Index dim_;
  Exponent p_;
};

inline double vector_norm(const PNormSpace& space, const Vector& v) {
  space.check(v);
  return lp_norm(v.coords, space.p());
}

inline double functional_norm(const PNormSpace& space, const Functional& f) {
  space.check(f);
  return lp_norm(f.coords, space.q());
}

namespace detail {

inline double max_column_sum(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

inline double max_row_sum(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

// Duality map J_p: the unit-q-norm vector attaining <J_p(y), y> = |y|_p.
inline Coords duality_map(const Coords& y, Exponent p) {
  const double n = lp_norm(y, p);
  Coords out = Coords::Zero(y.size());
  if (n == 0.0) return out;
  for (Index i = 0; i < y.size(); ++i) {
    const double r = std::abs(y[i]) / n;
    if (r == 0.0) continue;
    out[i] = std::copysign(std::pow(r, p.value() - 1.0), y[i]);
  }
  return out;
}

// Power iteration for |T|_{p->p} (1 < p < inf) from a given start. Returns the
// best ratio |Tx|_p / |x|_p seen; every iterate is a valid lower bound.
inline double pnorm_power_ascent(const Matrix& t, Coords x, Exponent p, int max_iterations) {
  const Exponent q = p.dual();
  double nx = lp_norm(x, p);
  if (nx == 0.0) return 0.0;
  x /= nx;
  double best = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    const Coords y = t * x;
    const double gamma = lp_norm(y, p);
    best = std::max(best, gamma);
    if (gamma == 0.0) break;
    const Coords z = t.transpose() * duality_map(y, p);
    const double zq = lp_norm(z, q);
    if (zq <= z.dot(x) * (1.0 + 1e-15)) break;
    x = duality_map(z, q);
    nx = lp_norm(x, p);
    if (nx == 0.0) break;
    x /= nx;
  }
  return best;
}

}  // namespace detail

/// Closed-form-free enclosure of |T|_{p->p}: lower end from seeded power
/// ascent, upper end from Riesz-Thorin interpolation between 1, 2 and inf.
inline ConstantBound operator_norm(const Operator& t, Exponent p, const NormOptions& opts = {}) {
  if (t.rows() != t.cols()) throw DimensionMismatch("operator_norm: matrix is not square");
  if (p.is_one()) return ConstantBound::exact_value(detail::max_column_sum(t));
  if (p.is_infinite()) return ConstantBound::exact_value(detail::max_row_sum(t));
  if (p.is_two()) return ConstantBound::exact_value(detail::spectral_norm(t));

  const double n1 = detail::max_column_sum(t);
  const double ninf = detail::max_row_sum(t);
  const double n2 = detail::spectral_norm(t);
  const double inv = p.reciprocal();
  double upper = std::pow(n1, inv) * std::pow(ninf, 1.0 - inv);
  if (p.value() < 2.0) {
    const double theta = 2.0 * inv - 1.0;  // 1/p = theta/1 + (1-theta)/2
    upper = std::min(upper, std::pow(n1, theta) * std::pow(n2, 1.0 - theta));
  } else {
    const double theta = 1.0 - 2.0 * inv;  // 1/p = (1-theta)/2 + theta/inf
    upper = std::min(upper, std::pow(n2, 1.0 - theta) * std::pow(ninf, theta));
  }

  const Index d = t.rows();
  double lower = 0.0;
  for (Index i = 0; i < d; ++i) {
    lower = std::max(lower, detail::pnorm_power_ascent(t, Coords::Unit(d, i), p, opts.max_iterations));
  }
  lower = std::max(lower, detail::pnorm_power_ascent(t, Coords::Ones(d), p, opts.max_iterations));
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < opts.random_starts; ++s) {
    Coords x(d);
    for (Index i = 0; i < d; ++i) x[i] = gauss(rng);
    lower = std::max(lower, detail::pnorm_power_ascent(t, x, p, opts.max_iterations));
  }
  // Both ends are evaluated in floating point; never report an inverted interval.
  upper = std::max(upper, lower);
  return ConstantBound::interval(lower, upper);
}

inline ConstantBound operator_norm(const PNormSpace& space, const Operator& t,
                                   const NormOptions& opts = {}) {
  space.check(t);
  return operator_norm(t, space.p(), opts);
}

/// |u (x) v| = |u|_p |v|_q, exact for every p.
inline double rank_one_norm(const PNormSpace& space, const Vector& u, const Functional& v) {
  return vector_norm(space, u) * functional_norm(space, v);
}

inline Operator outer(const Vector& u, const Functional& v) { return u.coords * v.coords.transpose(); }

}  // namespace schauder
