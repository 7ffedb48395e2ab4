#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schauder/bilinear.hpp"
#include "schauder/bound.hpp"
#include "schauder/space.hpp"

namespace schauder {

inline constexpr double kFrameTol = 1e-10;

struct Pair {
  Vector a;
  Functional b;
};

/// A finite sequence of (vector, functional) pairs on one space. It is a
/// frame when the synthesis sum  sum_n a_n (x) b_n  is the identity.
class FramePair {
 public:
  FramePair(PNormSpace space, std::vector<Pair> pairs)
      : space_(std::move(space)), pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw PreconditionError("a pair sequence needs at least one pair");
    for (const auto& pr : pairs_) {
      space_.check(pr.a);
      space_.check(pr.b);
    }
  }

  const PNormSpace& space() const { return space_; }
  std::span<const Pair> pairs() const { return pairs_; }
  const Pair& operator[](std::size_t n) const { return pairs_[n]; }
  std::size_t size() const { return pairs_.size(); }

  /// d x M, column n is a_n.
  Matrix synthesis() const {
    Matrix out(space_.dim(), static_cast<Index>(pairs_.size()));
    for (std::size_t n = 0; n < pairs_.size(); ++n) out.col(static_cast<Index>(n)) = pairs_[n].a.coords;
    return out;
  }

  /// M x d, row n is b_n.
  Matrix analysis() const {
    Matrix out(static_cast<Index>(pairs_.size()), space_.dim());
    for (std::size_t n = 0; n < pairs_.size(); ++n) out.row(static_cast<Index>(n)) = pairs_[n].b.coords.transpose();
    return out;
  }

  /// sum_{k < count} a_k (x) b_k
  Operator partial_sum(std::size_t count) const {
    Operator s = Operator::Zero(space_.dim(), space_.dim());
    for (std::size_t n = 0; n < count && n < pairs_.size(); ++n) s += outer(pairs_[n].a, pairs_[n].b);
    return s;
  }

  Operator resolution() const { return partial_sum(pairs_.size()); }

  std::vector<BilinearTerm> rank_one_terms() const {
    std::vector<BilinearTerm> terms;
    terms.reserve(pairs_.size());
    for (const auto& pr : pairs_) terms.push_back(BilinearTerm::rank_one(pr.a, pr.b));
    return terms;
  }

 private:
  PNormSpace space_;
  std::vector<Pair> pairs_;
};

struct FrameValidation {
  double residual = 0.0;  // upper bound of |sum a_n (x) b_n - I|
  bool is_frame = false;
  double tol = kFrameTol;
};

inline FrameValidation validate_frame(const FramePair& f, double tol = kFrameTol,
                                      const NormOptions& opts = {}) {
  if (!(tol > 0.0)) throw PreconditionError("frame tolerance must be positive");
  const Operator residual =
      f.resolution() - Operator::Identity(f.space().dim(), f.space().dim());
  const double r = operator_norm(f.space(), residual, opts).upper;
  return {r, r <= tol, tol};
}

/// K_F = max_n |sum_{k<=n} a_k (x) b_k|. Exact iff p in {1, 2, inf}.
inline ConstantBound frame_constant_K(const FramePair& f, double frame_tol = kFrameTol,
                                      const NormOptions& opts = {}) {
  const auto v = validate_frame(f, frame_tol, opts);
  if (!v.is_frame) {
    throw PreconditionError("K_F requires a frame; synthesis residual is " + std::to_string(v.residual));
  }
  ConstantBound k = ConstantBound::exact_value(0.0);
  Operator s = Operator::Zero(f.space().dim(), f.space().dim());
  for (const auto& pr : f.pairs()) {
    s += outer(pr.a, pr.b);
    k = max(k, operator_norm(f.space(), s, opts));
  }
  return k;
}

/// sum_n |a_n| |b_n|, the trivial besselian bound.
inline double crude_besselian_sum(const FramePair& f) {
  double acc = 0.0;
  for (const auto& pr : f.pairs()) acc += rank_one_norm(f.space(), pr.a, pr.b);
  return acc;
}

/// Least A with sum_n |b_n(x)| |y*(a_n)| <= A |x| |y*|, i.e. the absolute
/// bilinear norm of the rank-one terms a_n (x) b_n.
inline ConstantBound besselian_constant(const FramePair& f,
                                        EnumerationMode mode = EnumerationMode::exact,
                                        const BilinearOptions& base = {}) {
  BilinearOptions opts = base;
  opts.mode = mode;
  const auto terms = f.rank_one_terms();
  return abs_bilinear_norm(f.space(), terms, opts).value;
}

/// sum_n |b_n(x)| |y*(a_n)| / (|x| |y*|)
inline double besselian_ratio(const FramePair& f, const Vector& x, const Functional& ystar) {
  const double denom = vector_norm(f.space(), x) * functional_norm(f.space(), ystar);
  if (denom == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& pr : f.pairs()) acc += std::abs(pr.b(x)) * std::abs(ystar(pr.a));
  return acc / denom;
}

struct BesselianDiagnostic {
  double max_ratio = 0.0;
  std::size_t samples = 0;
};

/// Largest sampled besselian ratio over seeded random (x, y*). Half of the
/// functionals are drawn at random, the other half are norming functionals of
/// a random image point, which pushes the ratio towards the supremum.
inline BesselianDiagnostic besselian_diagnostic(const FramePair& f, std::size_t samples,
                                                std::uint64_t seed = 0) {
  const Index d = f.space().dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto draw = [&] {
    Coords c(d);
    for (Index i = 0; i < d; ++i) c[i] = gauss(rng);
    return c;
  };
  BesselianDiagnostic out;
  out.samples = samples;
  const Operator syn = f.resolution();
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x(draw());
    Functional y;
    if (s % 2 == 0) {
      y = Functional(draw());
    } else {
      Coords target = syn * x.coords + 0.1 * draw();
      y = Functional(detail::duality_map(target, f.space().p()));
    }
    out.max_ratio = std::max(out.max_ratio, besselian_ratio(f, x, y));
  }
  return out;
}

enum class EquivalenceDirection { vectors, functionals, both };

/// An isomorphism T of E together with a certified approximate inverse.
/// Witnesses w_n = R x_n (vectors) and z_n = y_n o R (functionals), R ~ T^{-1}.
struct EquivalenceWitness {
  Operator forward;
  Operator inverse;
  EquivalenceDirection direction = EquivalenceDirection::both;
  double inverse_residual = 0.0;  // upper bound of |T R - I|

  static constexpr double kInverseTol = 1e-8;

  static EquivalenceWitness certify(const PNormSpace& space, Operator t, Operator r,
                                    EquivalenceDirection dir) {
    space.check(t);
    space.check(r);
    const Operator res = t * r - Operator::Identity(space.dim(), space.dim());
    const double bound = operator_norm(space, res).upper;
    if (!(bound <= kInverseTol)) {
      throw NumericalFailure("equivalence witness: |T R - I| = " + std::to_string(bound) +
                             " exceeds 1e-8");
    }
    return {std::move(t), std::move(r), dir, bound};
  }
};

}  // namespace schauder
