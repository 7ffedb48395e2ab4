#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "schauder/bilinear.hpp"
#include "schauder/frames.hpp"

namespace schauder {

enum class DimensionMethod { cor37a, cor37b, remark38 };

inline std::string_view dimension_method_name(DimensionMethod m) {
  switch (m) {
    case DimensionMethod::cor37a: return "cor37a";
    case DimensionMethod::cor37b: return "cor37b";
    case DimensionMethod::remark38: return "remark38";
  }
  return "?";
}

/// A verified tail condition implying dim E <= N. In finite dimension the
/// conclusion is checked against the known dimension whenever `valid`.
struct DimensionCertificate {
  std::size_t n = 0;
  ConstantBound tail;
  DimensionMethod method = DimensionMethod::remark38;
  bool valid = false;  // tail.upper < 1 - kStrictMargin
  bool sharp = false;  // tail is the absolute bilinear norm, not the crude sum
};

namespace detail {

inline DimensionCertificate finish_certificate(const FramePair& f, std::size_t n,
                                               ConstantBound tail, DimensionMethod method,
                                               bool sharp) {
  DimensionCertificate cert{n, tail, method, below_one(tail), sharp};
  if (cert.valid && static_cast<std::size_t>(f.space().dim()) > n) {
    // Unreachable for a sound tail bound.
    throw std::logic_error("dimension certificate claims dim <= " + std::to_string(n) +
                           " but the space has dimension " + std::to_string(f.space().dim()));
  }
  return cert;
}

inline void check_prefix_length(const FramePair& f, std::size_t n, std::size_t given) {
  if (n < 1 || n > f.size()) {
    throw PreconditionError("N = " + std::to_string(n) + " must lie in [1, " +
                            std::to_string(f.size()) + "]");
  }
  if (given != n) {
    throw DimensionMismatch("expected " + std::to_string(n) + " replacement elements, got " +
                            std::to_string(given));
  }
}

}  // namespace detail

/// sup sum_{n<=N} |b_n(x) y*(x0_n - a_n)| + sum_{n>N} |b_n(x) y*(a_n)| < 1
/// implies dim E <= N.
inline DimensionCertificate dimension_bound_vectors(const FramePair& f,
                                                    const std::vector<Vector>& x0, std::size_t n,
                                                    const BilinearOptions& opts = {}) {
  detail::check_prefix_length(f, n, x0.size());
  std::vector<BilinearTerm> terms;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k < n) {
      f.space().check(x0[k]);
      terms.push_back(BilinearTerm::rank_one(Vector(x0[k].coords - f[k].a.coords), f[k].b));
    } else {
      terms.push_back(BilinearTerm::rank_one(f[k].a, f[k].b));
    }
  }
  const auto value = abs_bilinear_norm(f.space(), terms, opts).value;
  return detail::finish_certificate(f, n, value, DimensionMethod::cor37a, true);
}

/// Functional-side variant: terms a_n (x) (y0_n - b_n) for n <= N.
inline DimensionCertificate dimension_bound_functionals(const FramePair& f,
                                                        const std::vector<Functional>& y0,
                                                        std::size_t n,
                                                        const BilinearOptions& opts = {}) {
  detail::check_prefix_length(f, n, y0.size());
  std::vector<BilinearTerm> terms;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k < n) {
      f.space().check(y0[k]);
      terms.push_back(BilinearTerm::rank_one(f[k].a, Functional(y0[k].coords - f[k].b.coords)));
    } else {
      terms.push_back(BilinearTerm::rank_one(f[k].a, f[k].b));
    }
  }
  const auto value = abs_bilinear_norm(f.space(), terms, opts).value;
  return detail::finish_certificate(f, n, value, DimensionMethod::cor37b, true);
}

/// sum_{k>N} |a_k| |b_k| for N = 0..M (index N of the result).
inline std::vector<double> crude_tails(const FramePair& f) {
  std::vector<double> tails(f.size() + 1, 0.0);
  for (std::size_t k = f.size(); k-- > 0;) {
    tails[k] = tails[k + 1] + rank_one_norm(f.space(), f[k].a, f[k].b);
  }
  return tails;
}

/// Smallest N >= 1 whose tail after N is below 1. Crude mode uses
/// sum_{k>N} |a_k||b_k|; sharp mode the absolute bilinear norm of the tail
/// terms. N = M always succeeds (empty tail).
inline DimensionCertificate remark38_minimal_N(const FramePair& f, bool sharp = false,
                                               const BilinearOptions& opts = {}) {
  if (!sharp) {
    const auto tails = crude_tails(f);
    for (std::size_t n = 1; n <= f.size(); ++n) {
      if (below_one(tails[n])) {
        return detail::finish_certificate(f, n, ConstantBound::exact_value(tails[n]),
                                          DimensionMethod::remark38, false);
      }
    }
  } else {
    const auto all = f.rank_one_terms();
    for (std::size_t n = 1; n <= f.size(); ++n) {
      std::span<const BilinearTerm> tail(all.data() + n, all.size() - n);
      const auto value = abs_bilinear_norm(f.space(), tail, opts).value;
      if (below_one(value)) {
        return detail::finish_certificate(f, n, value, DimensionMethod::remark38, true);
      }
    }
  }
  throw std::logic_error("empty tail failed the dimension criterion");
}

}  // namespace schauder
