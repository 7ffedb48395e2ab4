#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schauder/bilinear.hpp"
#include "schauder/frames.hpp"
#include "schauder/space.hpp"

namespace schauder {

/// A base frame ((a_n, b_n)) together with a candidate pair sequence
/// ((x_n, y_n)) of the same length on the same space.
class PerturbationCandidate {
 public:
  PerturbationCandidate(FramePair base, std::vector<Pair> candidate)
      : base_(std::move(base)), candidate_(std::move(candidate)) {
    if (candidate_.size() != base_.size()) {
      throw DimensionMismatch("candidate has " + std::to_string(candidate_.size()) +
                              " pairs, base frame has " + std::to_string(base_.size()));
    }
    for (const auto& pr : candidate_) {
      base_.space().check(pr.a);
      base_.space().check(pr.b);
    }
  }

  /// ((x_n, b_n)): only the vectors move.
  static PerturbationCandidate with_vectors(const FramePair& base, const std::vector<Vector>& xs) {
    if (xs.size() != base.size()) throw DimensionMismatch("vector count differs from frame length");
    std::vector<Pair> c;
    c.reserve(xs.size());
    for (std::size_t n = 0; n < xs.size(); ++n) c.push_back({xs[n], base[n].b});
    return {base, std::move(c)};
  }

  /// ((a_n, y_n)): only the functionals move.
  static PerturbationCandidate with_functionals(const FramePair& base,
                                                const std::vector<Functional>& ys) {
    if (ys.size() != base.size()) throw DimensionMismatch("functional count differs from frame length");
    std::vector<Pair> c;
    c.reserve(ys.size());
    for (std::size_t n = 0; n < ys.size(); ++n) c.push_back({base[n].a, ys[n]});
    return {base, std::move(c)};
  }

  const FramePair& base() const { return base_; }
  std::span<const Pair> candidate() const { return candidate_; }
  const PNormSpace& space() const { return base_.space(); }
  std::size_t size() const { return candidate_.size(); }

  FramePair candidate_pairs() const { return {base_.space(), candidate_}; }

 private:
  FramePair base_;
  std::vector<Pair> candidate_;
};

enum class Criterion { thm31, cor34, thm33, cor35, cor36 };

inline std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::thm31: return "thm31";
    case Criterion::cor34: return "cor34";
    case Criterion::thm33: return "thm33";
    case Criterion::cor35: return "cor35";
    case Criterion::cor36: return "cor36";
  }
  return "?";
}

inline Criterion parse_criterion(std::string_view s) {
  for (Criterion c : {Criterion::thm31, Criterion::cor34, Criterion::thm33, Criterion::cor35,
                      Criterion::cor36}) {
    if (criterion_name(c) == s) return c;
  }
  throw PreconditionError("unknown criterion '" + std::string(s) + "'");
}

// Criteria whose conclusion is a besselian Schauder frame.
inline bool is_besselian_criterion(Criterion c) { return c != Criterion::thm31; }

struct CriterionReport {
  Criterion id = Criterion::thm31;
  ConstantBound value;
  bool satisfied = false;  // value.upper < 1 - kStrictMargin
  double margin = 0.0;     // 1 - value.upper

  static CriterionReport make(Criterion id, ConstantBound v) {
    return {id, v, below_one(v), 1.0 - v.upper};
  }
};

struct CriterionOptions {
  // |a_n| <= zero_tol selects the "a_n = 0" branch of the Schauder criterion.
  double zero_tol = 1e-14;
  double frame_tol = kFrameTol;
  BilinearOptions bilinear{};
  NormOptions norm{};
};

/// Q = sum |y_n - b_n||x_n| + sum_{a_n != 0} 2 K_F |x_n - a_n| / |a_n|
///     + sum_{a_n = 0} |b_n||x_n|
/// The lower/upper ends use the corresponding ends of K_F.
inline CriterionReport criterion_thm31(const PerturbationCandidate& c,
                                       const CriterionOptions& opts = {}) {
  const auto& space = c.space();
  const ConstantBound k = frame_constant_K(c.base(), opts.frame_tol, opts.norm);
  double functional_part = 0.0, nonzero_lo = 0.0, nonzero_hi = 0.0, zero_part = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const Pair& base = c.base()[n];
    const Pair& cand = c.candidate()[n];
    const double xn = vector_norm(space, cand.a);
    functional_part += functional_norm(space, Functional(cand.b.coords - base.b.coords)) * xn;
    const double an = vector_norm(space, base.a);
    if (an <= opts.zero_tol) {
      zero_part += functional_norm(space, base.b) * xn;
    } else {
      const double rel = vector_norm(space, Vector(cand.a.coords - base.a.coords)) / an;
      nonzero_lo += 2.0 * k.lower * rel;
      nonzero_hi += 2.0 * k.upper * rel;
    }
  }
  const double lo = functional_part + nonzero_lo + zero_part;
  const double hi = functional_part + nonzero_hi + zero_part;
  const ConstantBound q = k.exact ? ConstantBound::exact_value(hi) : ConstantBound::interval(lo, hi);
  return CriterionReport::make(Criterion::thm31, q);
}

/// sum_n |y_n||x_n - a_n| + |y_n - b_n||a_n|
inline CriterionReport criterion_cor34(const PerturbationCandidate& c) {
  const auto& space = c.space();
  double acc = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const Pair& base = c.base()[n];
    const Pair& cand = c.candidate()[n];
    acc += functional_norm(space, cand.b) * vector_norm(space, Vector(cand.a.coords - base.a.coords)) +
           functional_norm(space, Functional(cand.b.coords - base.b.coords)) *
               vector_norm(space, base.a);
  }
  return CriterionReport::make(Criterion::cor34, ConstantBound::exact_value(acc));
}

/// D_n = (x_n - a_n) (x) y_n + a_n (x) (y_n - b_n)
inline std::vector<BilinearTerm> perturbation_terms(const PerturbationCandidate& c) {
  std::vector<BilinearTerm> terms;
  terms.reserve(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) {
    const Pair& base = c.base()[n];
    const Pair& cand = c.candidate()[n];
    terms.push_back(BilinearTerm::rank_two(Vector(cand.a.coords - base.a.coords), cand.b, base.a,
                                           Functional(cand.b.coords - base.b.coords)));
  }
  return terms;
}

/// alpha = sup sum_n |y_n(x) y*(x_n - a_n) + (y_n - b_n)(x) y*(a_n)|
inline CriterionReport criterion_thm33(const PerturbationCandidate& c,
                                       const CriterionOptions& opts = {}) {
  const auto terms = perturbation_terms(c);
  return CriterionReport::make(Criterion::thm33,
                               abs_bilinear_norm(c.space(), terms, opts.bilinear).value);
}

/// Vectors-only perturbation: thm33 on ((x_n, b_n)).
inline CriterionReport criterion_cor35(const FramePair& base, const std::vector<Vector>& xs,
                                       const CriterionOptions& opts = {}) {
  auto r = criterion_thm33(PerturbationCandidate::with_vectors(base, xs), opts);
  r.id = Criterion::cor35;
  return r;
}

/// Functionals-only perturbation: thm33 on ((a_n, y_n)).
inline CriterionReport criterion_cor36(const FramePair& base, const std::vector<Functional>& ys,
                                       const CriterionOptions& opts = {}) {
  auto r = criterion_thm33(PerturbationCandidate::with_functionals(base, ys), opts);
  r.id = Criterion::cor36;
  return r;
}

inline CriterionReport evaluate_criterion(Criterion id, const PerturbationCandidate& c,
                                          const CriterionOptions& opts = {}) {
  switch (id) {
    case Criterion::thm31: return criterion_thm31(c, opts);
    case Criterion::cor34: return criterion_cor34(c);
    case Criterion::thm33: return criterion_thm33(c, opts);
    case Criterion::cor35: {
      std::vector<Vector> xs;
      for (const auto& pr : c.candidate()) xs.push_back(pr.a);
      return criterion_cor35(c.base(), xs, opts);
    }
    case Criterion::cor36: {
      std::vector<Functional> ys;
      for (const auto& pr : c.candidate()) ys.push_back(pr.b);
      return criterion_cor36(c.base(), ys, opts);
    }
  }
  throw PreconditionError("unknown criterion");
}

/// The candidate that a criterion actually certifies: cor35 keeps the base
/// functionals, cor36 keeps the base vectors.
inline PerturbationCandidate effective_candidate(Criterion id, const PerturbationCandidate& c) {
  if (id == Criterion::cor35) {
    std::vector<Vector> xs;
    for (const auto& pr : c.candidate()) xs.push_back(pr.a);
    return PerturbationCandidate::with_vectors(c.base(), xs);
  }
  if (id == Criterion::cor36) {
    std::vector<Functional> ys;
    for (const auto& pr : c.candidate()) ys.push_back(pr.b);
    return PerturbationCandidate::with_functionals(c.base(), ys);
  }
  return c;
}

/// T = sum_n x_n (x) y_n
inline Operator build_transfer(const PerturbationCandidate& c) {
  const Index d = c.space().dim();
  Operator t = Operator::Zero(d, d);
  for (const auto& pr : c.candidate()) t += outer(pr.a, pr.b);
  return t;
}

struct NeumannInverse {
  Operator inverse;
  double error_bound = 0.0;   // certified |R - T^{-1}|
  std::size_t iterations = 0; // highest power m in sum_{k<=m} (I - T)^k
  double contraction = 0.0;   // the q actually used, min(Q, |I - T| upper)
};

inline constexpr std::size_t kNeumannIterationCap = 100000;

/// R = sum_{k<=m} (I - T)^k with m the first index whose geometric tail
/// q^{m+1} / (1 - q) is at most tol.
inline NeumannInverse neumann_inverse(const PNormSpace& space, const Operator& t, double q,
                                      double tol = 1e-12,
                                      std::size_t max_iterations = kNeumannIterationCap) {
  space.check(t);
  if (!(q >= 0.0) || !(q < 1.0)) {
    throw PreconditionError("Neumann inversion needs a contraction bound Q in [0, 1), got " +
                            std::to_string(q));
  }
  if (!(tol > 0.0)) throw PreconditionError("Neumann tolerance must be positive");
  const Index d = space.dim();
  const Operator e = Operator::Identity(d, d) - t;
  const ConstantBound measured = operator_norm(space, e);
  if (measured.lower > q + 1e-12) {
    throw PreconditionError("|T - I| >= " + std::to_string(measured.lower) +
                            " contradicts the contraction bound " + std::to_string(q));
  }
  NeumannInverse out;
  out.contraction = std::min(q, measured.upper);
  const double qe = out.contraction;
  std::size_t m = 0;
  double tail = qe / (1.0 - qe);
  while (tail > tol) {
    tail *= qe;
    if (++m > max_iterations) {
      throw NumericalFailure("Neumann series needs more than " + std::to_string(max_iterations) +
                             " terms for q = " + std::to_string(qe));
    }
  }
  out.iterations = m;
  out.error_bound = qe == 0.0 ? 0.0 : tail;
  Operator r = Operator::Identity(d, d);
  Operator power = Operator::Identity(d, d);
  for (std::size_t k = 1; k <= m; ++k) {
    power = power * e;
    r += power;
  }
  out.inverse = std::move(r);
  return out;
}

struct TransferOperator {
  Operator forward;
  double contraction = 0.0;
  Operator inverse;
  double inverse_error = 0.0;
  std::size_t iterations = 0;
};

struct PerturbedFrames {
  FramePair frame_xz;  // ((x_n, z_n)), z_n = y_n o R
  FramePair frame_wy;  // ((w_n, y_n)), w_n = R x_n
  EquivalenceWitness witness;
  TransferOperator transfer;
  Criterion criterion = Criterion::thm31;
  double residual_xz = 0.0;
  double residual_wy = 0.0;
  bool certified = false;  // false when emitted under --force or a residual check failed
};

struct EmitOptions {
  double tol = 1e-12;
  bool force = false;
  std::size_t max_iterations = kNeumannIterationCap;
};

inline constexpr double kEmittedFrameTol = 1e-8;

/// Builds T, inverts it by Neumann series and returns both perturbed frames
/// sharing the single witness T.
inline PerturbedFrames emit_perturbed_frames(const PerturbationCandidate& c,
                                             const CriterionReport& report,
                                             const EmitOptions& opts = {}) {
  if (!report.satisfied && !opts.force) {
    throw CriterionUnsatisfied(std::string(criterion_name(report.id)) + " value " +
                               std::to_string(report.value.upper) + " is not below 1");
  }
  const auto& space = c.space();
  const Operator t = build_transfer(c);
  double q = report.value.upper;
  if (!report.satisfied) {
    q = operator_norm(space, t - Operator::Identity(space.dim(), space.dim())).upper;
    if (!(q < 1.0)) {
      throw NumericalFailure("|T - I| = " + std::to_string(q) + ": T is not a Neumann contraction");
    }
  }
  NeumannInverse inv = neumann_inverse(space, t, q, opts.tol, opts.max_iterations);
  const Operator& r = inv.inverse;

  std::vector<Pair> xz, wy;
  xz.reserve(c.size());
  wy.reserve(c.size());
  for (const auto& pr : c.candidate()) {
    xz.push_back({pr.a, pr.b.compose(r)});
    wy.push_back({Vector(r * pr.a.coords), pr.b});
  }
  FramePair frame_xz(space, std::move(xz));
  FramePair frame_wy(space, std::move(wy));
  const double res_xz = validate_frame(frame_xz, kEmittedFrameTol).residual;
  const double res_wy = validate_frame(frame_wy, kEmittedFrameTol).residual;
  auto witness = EquivalenceWitness::certify(space, t, r, EquivalenceDirection::both);
  TransferOperator transfer{t, inv.contraction, r, inv.error_bound, inv.iterations};
  const bool ok = report.satisfied && res_xz <= kEmittedFrameTol && res_wy <= kEmittedFrameTol;
  return {std::move(frame_xz), std::move(frame_wy), std::move(witness), std::move(transfer),
          report.id,           res_xz,              res_wy,             ok};
}

struct BesselianCertificate {
  ConstantBound besselian_xz;
  ConstantBound besselian_wy;
  ConstantBound inverse_norm;
  double bound = 0.0;     // (alpha + L_F) |R|, upper ends
  bool holds = false;     // both upper ends <= bound + 1e-8
  bool refuted = false;   // some lower end > bound + 1e-8
};

/// Checks the besselian constants of both emitted frames against
/// (alpha + L_F) |R|.
inline BesselianCertificate besselian_certificate(const PerturbedFrames& pf,
                                                  const ConstantBound& alpha,
                                                  const ConstantBound& besselian_base,
                                                  const ConstantBound& inverse_norm,
                                                  const BilinearOptions& opts = {}) {
  BesselianCertificate out;
  out.besselian_xz = besselian_constant(pf.frame_xz, EnumerationMode::automatic, opts);
  out.besselian_wy = besselian_constant(pf.frame_wy, EnumerationMode::automatic, opts);
  out.inverse_norm = inverse_norm;
  out.bound = (alpha.upper + besselian_base.upper) * inverse_norm.upper;
  constexpr double slack = 1e-8;
  out.holds = out.besselian_xz.upper <= out.bound + slack && out.besselian_wy.upper <= out.bound + slack;
  out.refuted = out.besselian_xz.lower > out.bound + slack || out.besselian_wy.lower > out.bound + slack;
  return out;
}

inline BesselianCertificate besselian_certificate(const PerturbedFrames& pf,
                                                  const ConstantBound& alpha,
                                                  const ConstantBound& besselian_base,
                                                  const BilinearOptions& opts = {}) {
  return besselian_certificate(pf, alpha, besselian_base,
                               operator_norm(pf.frame_xz.space(), pf.transfer.inverse), opts);
}

}  // namespace schauder
