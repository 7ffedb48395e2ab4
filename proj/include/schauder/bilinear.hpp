#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "schauder/bound.hpp"
#include "schauder/space.hpp"

namespace schauder {

/// One summand D = left * right^T of a family of operators, kept in factored
/// form (columns of `left` are vectors, columns of `right` are functionals)
/// so that analysis/synthesis factorization bounds stay available.
struct BilinearTerm {
  Matrix left;
  Matrix right;

  static BilinearTerm rank_one(const Vector& u, const Functional& v) {
    return {u.coords, v.coords};
  }

  // u1 (x) v1 + u2 (x) v2
  static BilinearTerm rank_two(const Vector& u1, const Functional& v1, const Vector& u2,
                               const Functional& v2) {
    BilinearTerm t{Matrix(u1.size(), 2), Matrix(v1.size(), 2)};
    t.left << u1.coords, u2.coords;
    t.right << v1.coords, v2.coords;
    return t;
  }

  Matrix dense() const { return left * right.transpose(); }
};

enum class EnumerationMode { exact, bounds, automatic };

struct BilinearOptions {
  EnumerationMode mode = EnumerationMode::automatic;
  // Largest number of nonzero terms for which all sign patterns are visited.
  int enumeration_cap = 14;
  std::uint64_t seed = 0;
  int greedy_restarts = 4;
  NormOptions norm{};
};

struct BilinearNorm {
  ConstantBound value;
  double crude_sum = 0.0;   // sum of the term norms
  double factorized = 0.0;  // min over r of |synthesis|_{r->p} |analysis|_{p->r}
  Index active_terms = 0;   // terms that are not identically zero
  bool enumerated = false;  // value came from the full sign enumeration
};

namespace detail {

inline double closed_form_norm(const Matrix& s, Exponent p) {
  if (p.is_one()) return max_column_sum(s);
  if (p.is_infinite()) return max_row_sum(s);
  return spectral_norm(s);
}

inline bool all_zero(const Matrix& m) { return (m.array() == 0.0).all(); }

struct ActiveTerms {
  std::vector<Matrix> dense;
  std::vector<Coords> left_atoms;
  std::vector<Coords> right_atoms;
};

inline ActiveTerms collect_active(const PNormSpace& space, std::span<const BilinearTerm> terms) {
  ActiveTerms out;
  for (const auto& term : terms) {
    if (term.left.rows() != space.dim() || term.right.rows() != space.dim() ||
        term.left.cols() != term.right.cols()) {
      throw DimensionMismatch("bilinear term does not match the space dimension");
    }
    Matrix d = term.dense();
    if (all_zero(d)) continue;
    for (Index j = 0; j < term.left.cols(); ++j) {
      if (all_zero(term.left.col(j)) || all_zero(term.right.col(j))) continue;
      out.left_atoms.push_back(term.left.col(j));
      out.right_atoms.push_back(term.right.col(j));
    }
    out.dense.push_back(std::move(d));
  }
  return out;
}

inline double term_norm_upper(const PNormSpace& space, const BilinearTerm& term,
                              const NormOptions& opts) {
  double atoms = 0.0;
  for (Index j = 0; j < term.left.cols(); ++j) {
    atoms += lp_norm(term.left.col(j), space.p()) * lp_norm(term.right.col(j), space.q());
  }
  if (term.left.cols() <= 1) return atoms;
  return std::min(atoms, operator_norm(term.dense(), space.p(), opts).upper);
}

// sup over sign patterns of |L diag(s) R^T|_{p->p}, bounded through the
// factorization l^p -> l^r -> l^r -> l^p for r in {1, 2, inf}. diag(s) is an
// isometry of every l^r, so each route gives |L|_{r->p} |R^T|_{p->r}.
inline double factorization_bound(const PNormSpace& space, const ActiveTerms& active) {
  const auto m = static_cast<Index>(active.left_atoms.size());
  if (m == 0) return 0.0;
  const Index d = space.dim();
  const Exponent p = space.p();
  const Exponent q = space.q();
  const double inv_p = p.reciprocal();
  Matrix synth(d, m), anal(m, d);
  for (Index j = 0; j < m; ++j) {
    synth.col(j) = active.left_atoms[static_cast<std::size_t>(j)];
    anal.row(j) = active.right_atoms[static_cast<std::size_t>(j)].transpose();
  }
  double sum_left = 0.0, sum_right = 0.0, max_left = 0.0, max_right = 0.0;
  for (Index j = 0; j < m; ++j) {
    const double l = lp_norm(synth.col(j), p);
    const double r = lp_norm(anal.row(j).transpose(), q);
    sum_left += l;
    sum_right += r;
    max_left = std::max(max_left, l);
    max_right = std::max(max_right, r);
  }
  const double dd = static_cast<double>(d);

  // r = 1: |L|_{1->p} is the largest column norm; |x|_1 <= d^{1-1/p} |x|_p.
  const double anal_p_to_1 = std::min(sum_right, max_column_sum(anal) * std::pow(dd, 1.0 - inv_p));
  const double via_one = max_left * anal_p_to_1;

  // r = inf: |R^T|_{p->inf} is the largest row norm; |y|_p <= d^{1/p} |y|_inf.
  const double synth_inf_to_p = std::min(sum_left, max_row_sum(synth) * std::pow(dd, inv_p));
  const double via_inf = synth_inf_to_p * max_right;

  // r = 2: spectral norms with the l^2 <-> l^p comparison constants.
  const double synth_2_to_p = spectral_norm(synth) * std::pow(dd, std::max(0.0, inv_p - 0.5));
  const double anal_p_to_2 = spectral_norm(anal) * std::pow(dd, std::max(0.0, 0.5 - inv_p));
  const double via_two = synth_2_to_p * anal_p_to_2;

  return std::min({via_one, via_inf, via_two});
}

// Full enumeration over sign patterns with s_0 = +1 fixed (|S| = |-S|), visited
// in Gray-code order so each step is a single rank update.
inline double enumerate_signs(const std::vector<Matrix>& dense, Exponent p) {
  const std::size_t k = dense.size();
  if (k == 0) return 0.0;
  Matrix s = dense[0];
  for (std::size_t i = 1; i < k; ++i) s += dense[i];
  std::vector<int> sign(k, 1);
  double best = closed_form_norm(s, p);
  const std::uint64_t patterns = std::uint64_t{1} << (k - 1);
  for (std::uint64_t g = 1; g < patterns; ++g) {
    const auto idx = static_cast<std::size_t>(std::countr_zero(g)) + 1;
    sign[idx] = -sign[idx];
    s += (2.0 * sign[idx]) * dense[idx];
    best = std::max(best, closed_form_norm(s, p));
  }
  return best;
}

inline double pattern_norm_lower(const std::vector<Matrix>& dense, const std::vector<int>& sign,
                                 Exponent p, const NormOptions& opts) {
  Matrix s = Matrix::Zero(dense[0].rows(), dense[0].cols());
  for (std::size_t i = 0; i < dense.size(); ++i) s += static_cast<double>(sign[i]) * dense[i];
  return operator_norm(s, p, opts).lower;
}

// Single-flip hill climbing over sign patterns; every visited value is a
// valid lower bound for the supremum.
inline double greedy_sign_ascent(const std::vector<Matrix>& dense, Exponent p,
                                 const BilinearOptions& opts) {
  const std::size_t k = dense.size();
  if (k == 0) return 0.0;
  std::mt19937_64 rng(opts.seed);
  std::bernoulli_distribution coin;
  double overall = 0.0;
  for (int start = 0; start <= opts.greedy_restarts; ++start) {
    std::vector<int> sign(k, 1);
    if (start > 0) {
      for (std::size_t i = 1; i < k; ++i) sign[i] = coin(rng) ? 1 : -1;
    }
    double best = pattern_norm_lower(dense, sign, p, opts.norm);
    for (int sweep = 0; sweep < 64; ++sweep) {
      bool improved = false;
      for (std::size_t i = 1; i < k; ++i) {
        sign[i] = -sign[i];
        const double v = pattern_norm_lower(dense, sign, p, opts.norm);
        if (v > best * (1.0 + 1e-14)) {
          best = v;
          improved = true;
        } else {
          sign[i] = -sign[i];
        }
      }
      if (!improved) break;
    }
    overall = std::max(overall, best);
  }
  return overall;
}

}  // namespace detail

/// sup over |x| <= 1, |y*| <= 1 of sum_n |y*(D_n x)|.
///
/// For real scalars the supremum equals max over s in {+-1}^M of
/// |sum_n s_n D_n|_{p->p}: pick s_n = sign y*(D_n x) for the maximizing pair,
/// and conversely |y*(S x)| <= sum_n |y*(D_n x)| for every pattern. Exact mode
/// enumerates all patterns with closed-form norms (p in {1, 2, inf}); bounds
/// mode brackets the value between a greedy sign ascent and the smaller of
/// the crude sum and the factorization bound. Automatic picks exact whenever
/// it is admissible. Identically-zero terms are dropped before the cap check.
inline BilinearNorm abs_bilinear_norm(const PNormSpace& space, std::span<const BilinearTerm> terms,
                                      const BilinearOptions& opts = {}) {
  if (opts.enumeration_cap < 1 || opts.enumeration_cap > 40) {
    throw PreconditionError("enumeration cap must lie in [1, 40]");
  }
  const detail::ActiveTerms active = detail::collect_active(space, terms);
  BilinearNorm out;
  out.active_terms = static_cast<Index>(active.dense.size());
  for (const auto& t : terms) out.crude_sum += detail::term_norm_upper(space, t, opts.norm);
  out.factorized = detail::factorization_bound(space, active);
  if (active.dense.empty()) {
    out.value = ConstantBound::exact_value(0.0);
    out.enumerated = true;
    return out;
  }

  const bool fits = out.active_terms <= opts.enumeration_cap;
  const bool closed = space.p().has_closed_form();
  if (opts.mode == EnumerationMode::exact) {
    if (!closed) {
      throw PreconditionError("exact sign enumeration requires p in {1, 2, inf}");
    }
    if (!fits) {
      throw PreconditionError("exact sign enumeration over " + std::to_string(out.active_terms) +
                              " terms exceeds the cap of " + std::to_string(opts.enumeration_cap));
    }
  }
  if (opts.mode != EnumerationMode::bounds && fits && closed) {
    out.value = ConstantBound::exact_value(detail::enumerate_signs(active.dense, space.p()));
    out.enumerated = true;
    return out;
  }
  const double lower = detail::greedy_sign_ascent(active.dense, space.p(), opts);
  const double upper = std::max(lower, std::min(out.crude_sum, out.factorized));
  out.value = ConstantBound::interval(lower, upper);
  return out;
}

}  // namespace schauder
