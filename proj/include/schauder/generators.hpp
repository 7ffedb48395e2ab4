#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>

#include "schauder/frames.hpp"

namespace schauder::gen {

enum class FrameKind { canonical, tight, random };

inline FrameKind parse_kind(std::string_view s) {
  if (s == "canonical") return FrameKind::canonical;
  if (s == "tight") return FrameKind::tight;
  if (s == "random") return FrameKind::random;
  throw PreconditionError("unknown frame kind '" + std::string(s) + "'");
}

/// (e_n, e_n*) for n = 1..d.
inline FramePair canonical(const PNormSpace& space) {
  std::vector<Pair> pairs;
  for (Index i = 0; i < space.dim(); ++i) {
    pairs.push_back({Vector(Coords::Unit(space.dim(), i)), Functional(Coords::Unit(space.dim(), i))});
  }
  return {space, std::move(pairs)};
}

/// Three unit vectors of R^2 at mutual angle 120 degrees, b_n = (2/3) a_n.
inline FramePair mercedes(Exponent p = Exponent(2.0)) {
  std::vector<Pair> pairs;
  for (int k = 0; k < 3; ++k) {
    const double angle = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * k / 3.0;
    Coords a(2);
    a << std::cos(angle), std::sin(angle);
    pairs.push_back({Vector(a), Functional((2.0 / 3.0) * a)});
  }
  return {PNormSpace(2, p), std::move(pairs)};
}

namespace detail {

inline Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = g(rng);
  }
  return m;
}

inline void check_shape(Index d, Index count) {
  if (d < 1) throw PreconditionError("dimension must be at least 1");
  if (count < d) throw PreconditionError("a frame of R^d needs at least d pairs");
}

// Rows of (A A^T)^{-1} A, i.e. the canonical dual b_n = (A A^T)^{-1} a_n.
inline std::vector<Pair> with_canonical_dual(const Matrix& a) {
  const Matrix gram_inv = (a * a.transpose()).inverse();
  std::vector<Pair> pairs;
  for (Index n = 0; n < a.cols(); ++n) {
    pairs.push_back({Vector(a.col(n)), Functional(gram_inv * a.col(n))});
  }
  return pairs;
}

}  // namespace detail

/// Unit-norm tight frame by alternating polar normalization and column
/// normalization of a seeded Gaussian matrix; the functionals are the
/// canonical dual, so the frame identity holds whether or not the
/// alternation has fully converged.
inline FramePair tight(Index d, Index count, Exponent p, std::uint64_t seed) {
  detail::check_shape(d, count);
  std::mt19937_64 rng(seed);
  Matrix a = detail::gaussian(d, count, rng);
  const double scale = std::sqrt(static_cast<double>(count) / static_cast<double>(d));
  for (int it = 0; it < 200; ++it) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a * a.transpose());
    a = scale * es.operatorInverseSqrt() * a;
    for (Index n = 0; n < count; ++n) a.col(n).normalize();
  }
  return {PNormSpace(d, p), detail::with_canonical_dual(a)};
}

/// Random synthesis vectors and random analysis functionals, the latter
/// corrected by the right inverse A^T (A A^T)^{-1} so that A B = I.
/// Synthesis matrices with condition number above 1e3 are redrawn from the
/// same stream; the correction is applied twice to remove rounding drift.
inline FramePair random(Index d, Index count, Exponent p, std::uint64_t seed) {
  detail::check_shape(d, count);
  std::mt19937_64 rng(seed);
  Matrix a = detail::gaussian(d, count, rng);
  for (;;) {
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) * 1e3 >= s(0)) break;
    a = detail::gaussian(d, count, rng);
  }
  Matrix b = detail::gaussian(count, d, rng);
  const Matrix right_inverse = a.transpose() * (a * a.transpose()).inverse();
  for (int pass = 0; pass < 2; ++pass) b += right_inverse * (Matrix::Identity(d, d) - a * b);
  std::vector<Pair> pairs;
  for (Index n = 0; n < count; ++n) pairs.push_back({Vector(a.col(n)), Functional(b.row(n).transpose())});
  return {PNormSpace(d, p), std::move(pairs)};
}

inline FramePair make(FrameKind kind, Index d, Index count, Exponent p, std::uint64_t seed) {
  switch (kind) {
    case FrameKind::canonical:
      if (count != d) throw PreconditionError("the canonical frame has exactly d pairs");
      return canonical(PNormSpace(d, p));
    case FrameKind::tight: return tight(d, count, p, seed);
    case FrameKind::random: return random(d, count, p, seed);
  }
  throw PreconditionError("unknown frame kind");
}

}  // namespace schauder::gen
