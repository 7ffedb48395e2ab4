#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "schauder/frames.hpp"
#include "schauder/perturbation.hpp"

namespace schauder {

/// A partition of {1..total} into a targeted set I and its complement, with
/// the order-preserving ranks sigma0 : I -> {1..|I|} and
/// sigma1 : complement -> {1..total-|I|}. All indices are 1-based.
class IndexInterleaving {
 public:
  IndexInterleaving(std::size_t total, std::vector<std::size_t> targeted) : total_(total) {
    std::set<std::size_t> seen;
    for (std::size_t i : targeted) {
      if (i < 1 || i > total) {
        throw PreconditionError("index " + std::to_string(i) + " outside 1.." + std::to_string(total));
      }
      if (!seen.insert(i).second) throw PreconditionError("duplicate index " + std::to_string(i));
    }
    if (seen.empty()) throw PreconditionError("targeted index set I is empty");
    if (seen.size() == total) throw PreconditionError("complement of I is empty");
    rank_.assign(total + 1, 0);
    in_targeted_.assign(total + 1, false);
    for (std::size_t i : seen) in_targeted_[i] = true;
    std::size_t r0 = 0, r1 = 0;
    for (std::size_t n = 1; n <= total; ++n) {
      if (in_targeted_[n]) {
        rank_[n] = ++r0;
        targeted_.push_back(n);
      } else {
        rank_[n] = ++r1;
        complement_.push_back(n);
      }
    }
  }

  std::size_t total() const { return total_; }
  const std::vector<std::size_t>& targeted() const { return targeted_; }
  const std::vector<std::size_t>& complement() const { return complement_; }
  bool is_targeted(std::size_t n) const { return in_targeted_.at(n); }

  std::size_t sigma0(std::size_t n) const {
    if (!is_targeted(n)) throw PreconditionError("sigma0 is defined on I only");
    return rank_[n];
  }
  std::size_t sigma1(std::size_t n) const {
    if (is_targeted(n)) throw PreconditionError("sigma1 is defined on the complement of I only");
    return rank_[n];
  }

 private:
  std::size_t total_;
  std::vector<std::size_t> targeted_;
  std::vector<std::size_t> complement_;
  std::vector<std::size_t> rank_;
  std::vector<bool> in_targeted_;
};

/// Numerical rank of the column span. Columns are normalized first so the
/// answer does not depend on their scaling.
inline Index span_rank(const Matrix& columns, double rtol = 1e-9) {
  if (columns.cols() == 0) return 0;
  Matrix m = columns;
  for (Index j = 0; j < m.cols(); ++j) {
    const double n = m.col(j).norm();
    if (n > 0.0) m.col(j) /= n;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i) r += s(i) > rtol * s(0) ? 1 : 0;
  return r;
}

/// A finite basis of a subspace: columns are the basis elements (vectors
/// for V, functional coefficients for W).
struct SubspaceSpec {
  Matrix basis;

  explicit SubspaceSpec(Matrix b) : basis(std::move(b)) {
    if (basis.cols() < 1) throw PreconditionError("subspace basis must be nonempty");
    for (Index j = 0; j < basis.cols(); ++j) {
      if (detail::all_zero(basis.col(j))) throw PreconditionError("subspace basis contains a zero element");
    }
    if (span_rank(basis) != basis.cols()) throw PreconditionError("subspace basis is linearly dependent");
  }

  static SubspaceSpec of(const std::vector<Vector>& vs) {
    if (vs.empty()) throw PreconditionError("subspace basis must be nonempty");
    Matrix m(vs.front().size(), static_cast<Index>(vs.size()));
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (vs[j].size() != m.rows()) throw DimensionMismatch("basis vectors differ in length");
      m.col(static_cast<Index>(j)) = vs[j].coords;
    }
    return SubspaceSpec(std::move(m));
  }

  static SubspaceSpec of(const std::vector<Functional>& fs) {
    std::vector<Vector> vs;
    for (const auto& f : fs) vs.emplace_back(f.coords);
    return of(vs);
  }

  Index size() const { return basis.cols(); }
  Index dim() const { return basis.rows(); }

  // k-th element (1-based), cycling through the basis.
  Coords cyclic(std::size_t k) const {
    return basis.col(static_cast<Index>((k - 1) % static_cast<std::size_t>(basis.cols())));
  }
};

/// F1: off I the pairs of F in order, on I the pairs (0, d*_{sigma0(n)}).
inline FramePair build_interleaved(const FramePair& f, const SubspaceSpec& w,
                                   const IndexInterleaving& idx) {
  if (idx.complement().size() != f.size()) {
    throw DimensionMismatch("complement of I has " + std::to_string(idx.complement().size()) +
                            " indices, frame has " + std::to_string(f.size()) + " pairs");
  }
  if (w.dim() != f.space().dim()) throw DimensionMismatch("W basis does not match the space");
  std::vector<Pair> pairs;
  pairs.reserve(idx.total());
  const Index d = f.space().dim();
  for (std::size_t n = 1; n <= idx.total(); ++n) {
    if (idx.is_targeted(n)) {
      pairs.push_back({Vector(Coords::Zero(d)), Functional(w.cyclic(idx.sigma0(n)))});
    } else {
      pairs.push_back(f[idx.sigma1(n) - 1]);
    }
  }
  return {f.space(), std::move(pairs)};
}

struct ScalarChoice {
  std::vector<double> t;        // one scalar per element of I, in index order
  double weighted_sum = 0.0;    // sum_k |d*_k| |t_k c_k|
};

/// t_k = theta 2^{-k} / (|d*_k| |c_k|), so sum_k |t_k| |d*_k| |c_k| = theta (1 - 2^{-|I|}).
inline ScalarChoice choose_scalars(const PNormSpace& space, const SubspaceSpec& v,
                                   const SubspaceSpec& w, const IndexInterleaving& idx,
                                   double theta) {
  if (!(theta > 0.0) || !below_one(theta)) {
    throw PreconditionError("theta must lie in (0, 1 - 1e-12), got " + std::to_string(theta));
  }
  ScalarChoice out;
  const std::size_t count = idx.targeted().size();
  out.t.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    const Vector c(v.cyclic(k));
    const Functional dstar(w.cyclic(k));
    const double cn = vector_norm(space, c);
    const double dn = functional_norm(space, dstar);
    if (cn == 0.0 || dn == 0.0) throw PreconditionError("zero basis element");
    const double t = theta * std::ldexp(1.0, -static_cast<int>(k)) / (dn * cn);
    out.t.push_back(t);
    out.weighted_sum += dn * vector_norm(space, Vector(t * c.coords));
  }
  return out;
}

struct SpanCheck {
  Index rank_lhs = 0;
  Index rank_rhs = 0;
  Index rank_joint = 0;
  bool equal = false;
};

inline SpanCheck compare_spans(const Matrix& lhs, const Matrix& rhs) {
  Matrix joint(lhs.rows(), lhs.cols() + rhs.cols());
  joint << lhs, rhs;
  SpanCheck s{span_rank(lhs), span_rank(rhs), span_rank(joint), false};
  s.equal = s.rank_lhs == s.rank_rhs && s.rank_rhs == s.rank_joint;
  return s;
}

struct SpanReport {
  SpanCheck u_equals_v;             // span{u_{n,1} : n in I} = V
  SpanCheck z_equals_image_of_w;    // span{z_n : n in I} = {f o R : f in W}
  SpanCheck v1_equals_w;            // span{v*_{n,1} : n in I} = W
  SpanCheck w_equals_image_of_v;    // span{w_n : n in I} = R V
  double witness_residual = 0.0;    // max coordinate gap of z_n - d* o R and w_n - R u_{n,1}
  bool passed = false;
};

struct TargetedFrames {
  IndexInterleaving interleaving;
  FramePair interleaved;       // F1
  PerturbationCandidate candidate;  // F1 -> F~
  ScalarChoice scalars;
  CriterionReport report;
  PerturbedFrames frames;      // ((u_{n,1}, z_n)), ((w_n, v*_{n,1}))
  SpanReport spans;
};

/// Perturbs the zero vectors of F1 on I into t_n c_{sigma0(n)}, certifies the
/// move with the Schauder (or, with `besselian`, the besselian) criterion
/// and emits the two perturbed frames, then checks the span claims on I.
inline TargetedFrames construct_targeted_frames(const FramePair& f, const SubspaceSpec& v,
                                                const SubspaceSpec& w,
                                                const IndexInterleaving& idx, double theta,
                                                bool besselian, const CriterionOptions& copts = {},
                                                const EmitOptions& eopts = {}) {
  const auto& space = f.space();
  if (v.dim() != space.dim()) throw DimensionMismatch("V basis does not match the space");
  const std::size_t count = idx.targeted().size();
  if (count < static_cast<std::size_t>(std::max(v.size(), w.size()))) {
    throw PreconditionError("|I| = " + std::to_string(count) +
                            " is smaller than a basis of V or W; the spans cannot be reached");
  }
  if (!besselian) {
    for (const auto& pr : f.pairs()) {
      if (vector_norm(space, pr.a) <= copts.zero_tol || functional_norm(space, pr.b) <= copts.zero_tol) {
        throw PreconditionError("the Schauder construction needs a_n != 0 and b_n != 0");
      }
    }
  }
  const auto validation = validate_frame(f, copts.frame_tol, copts.norm);
  if (!validation.is_frame) throw PreconditionError("input is not a frame");

  ScalarChoice scalars = choose_scalars(space, v, w, idx, theta);
  FramePair f1 = build_interleaved(f, w, idx);
  std::vector<Pair> moved(f1.pairs().begin(), f1.pairs().end());
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t n = idx.targeted()[j];
    moved[n - 1].a = Vector(scalars.t[j] * v.cyclic(idx.sigma0(n)));
  }
  PerturbationCandidate cand(f1, std::move(moved));
  CriterionReport report = besselian ? criterion_cor34(cand) : criterion_thm31(cand, copts);
  if (!report.satisfied) {
    throw std::logic_error("targeted construction produced an unsatisfied criterion");
  }
  PerturbedFrames frames = emit_perturbed_frames(cand, report, eopts);

  const Index d = space.dim();
  const auto ci = static_cast<Index>(count);
  Matrix u(d, ci), z(d, ci), v1(d, ci), wv(d, ci);
  const Operator& r = frames.transfer.inverse;
  double gap = 0.0;
  for (Index j = 0; j < ci; ++j) {
    const std::size_t n = idx.targeted()[static_cast<std::size_t>(j)] - 1;
    u.col(j) = frames.frame_xz[n].a.coords;
    z.col(j) = frames.frame_xz[n].b.coords;
    v1.col(j) = frames.frame_wy[n].b.coords;
    wv.col(j) = frames.frame_wy[n].a.coords;
    gap = std::max(gap, (z.col(j) - r.transpose() * v1.col(j)).cwiseAbs().maxCoeff());
    gap = std::max(gap, (wv.col(j) - r * u.col(j)).cwiseAbs().maxCoeff());
  }
  SpanReport spans;
  spans.u_equals_v = compare_spans(u, v.basis);
  spans.z_equals_image_of_w = compare_spans(z, r.transpose() * w.basis);
  spans.v1_equals_w = compare_spans(v1, w.basis);
  spans.w_equals_image_of_v = compare_spans(wv, r * v.basis);
  spans.witness_residual = gap;
  spans.passed = spans.u_equals_v.equal && spans.z_equals_image_of_w.equal &&
                 spans.v1_equals_w.equal && spans.w_equals_image_of_v.equal &&
                 spans.z_equals_image_of_w.rank_rhs == w.size() &&
                 spans.w_equals_image_of_v.rank_rhs == v.size() && gap <= 1e-9;

  return {idx,     std::move(f1),     std::move(cand), std::move(scalars),
          report,  std::move(frames), spans};
}

}  // namespace schauder
