#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json, vendored

#include "schauder/construction.hpp"
#include "schauder/dimension.hpp"
#include "schauder/frames.hpp"
#include "schauder/perturbation.hpp"

namespace schauder::io {

using json = nlohmann::json;

// Reals that may be infinite are written as the string "inf".
inline json encode_extended(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return v;
}

inline double decode_extended(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "Infinity" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw PreconditionError("expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw PreconditionError("expected a number, got " + j.dump());
  return j.get<double>();
}

inline json encode(Exponent p) { return encode_extended(p.value()); }

inline json encode(const PNormSpace& s) { return {{"dim", s.dim()}, {"p", encode(s.p())}}; }

inline PNormSpace decode_space(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("p")) {
    throw PreconditionError("space must be an object with \"dim\" and \"p\"");
  }
  if (!j.at("dim").is_number_integer()) throw PreconditionError("space.dim must be an integer");
  return {j.at("dim").get<Index>(), Exponent(decode_extended(j.at("p")))};
}

inline json encode(const Coords& c) {
  json arr = json::array();
  for (Index i = 0; i < c.size(); ++i) arr.push_back(c[i]);
  return arr;
}

inline Coords decode_coords(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of numbers, got " + j.dump());
  Coords c(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw PreconditionError("expected a number, got " + j[i].dump());
    c[static_cast<Index>(i)] = j[i].get<double>();
  }
  return c;
}

inline json encode(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(encode(Coords(m.row(i).transpose())));
  return rows;
}

inline Matrix decode_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw PreconditionError("expected a nonempty array of rows");
  const Coords first = decode_coords(j[0]);
  Matrix m(static_cast<Index>(j.size()), first.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Coords row = decode_coords(j[i]);
    if (row.size() != m.cols()) throw DimensionMismatch("matrix rows differ in length");
    m.row(static_cast<Index>(i)) = row.transpose();
  }
  return m;
}

inline json encode(const FramePair& f) {
  json pairs = json::array();
  for (const auto& pr : f.pairs()) pairs.push_back({{"a", encode(pr.a.coords)}, {"b", encode(pr.b.coords)}});
  return {{"space", encode(f.space())}, {"pairs", pairs}};
}

inline std::vector<Pair> decode_pairs(const json& j, const char* vkey, const char* fkey) {
  if (!j.is_array()) throw PreconditionError("pair list must be an array");
  std::vector<Pair> pairs;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains(vkey) || !e.contains(fkey)) {
      throw PreconditionError(std::string("each pair needs \"") + vkey + "\" and \"" + fkey + "\"");
    }
    pairs.push_back({Vector(decode_coords(e.at(vkey))), Functional(decode_coords(e.at(fkey)))});
  }
  return pairs;
}

inline FramePair decode_frame(const json& j) {
  if (!j.is_object() || !j.contains("space") || !j.contains("pairs")) {
    throw PreconditionError("frame must be an object with \"space\" and \"pairs\"");
  }
  return {decode_space(j.at("space")), decode_pairs(j.at("pairs"), "a", "b")};
}

inline json encode(const PerturbationCandidate& c) {
  json cand = json::array();
  for (const auto& pr : c.candidate()) cand.push_back({{"x", encode(pr.a.coords)}, {"y", encode(pr.b.coords)}});
  return {{"base", encode(c.base())}, {"candidate", cand}};
}

inline PerturbationCandidate decode_candidate(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("candidate")) {
    throw PreconditionError("perturbation must be an object with \"base\" and \"candidate\"");
  }
  return {decode_frame(j.at("base")), decode_pairs(j.at("candidate"), "x", "y")};
}

inline std::vector<Vector> decode_vectors(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of vectors");
  std::vector<Vector> out;
  for (const auto& e : j) out.emplace_back(decode_coords(e));
  return out;
}

inline std::vector<Functional> decode_functionals(const json& j) {
  std::vector<Functional> out;
  for (auto& v : decode_vectors(j)) out.emplace_back(std::move(v.coords));
  return out;
}

inline json encode(const ConstantBound& b) {
  return {{"lower", encode_extended(b.lower)}, {"upper", encode_extended(b.upper)}, {"exact", b.exact}};
}

inline json encode(const FrameValidation& v) {
  return {{"residual", v.residual}, {"is_frame", v.is_frame}, {"tol", v.tol}};
}

inline json encode(const CriterionReport& r) {
  return {{"criterion", std::string(criterion_name(r.id))},
          {"value", encode(r.value)},
          {"satisfied", r.satisfied},
          {"margin", encode_extended(r.margin)}};
}

inline json encode(const PerturbedFrames& pf) {
  return {{"criterion", std::string(criterion_name(pf.criterion))},
          {"certified", pf.certified},
          {"T", encode(pf.transfer.forward)},
          {"R", encode(pf.transfer.inverse)},
          {"contraction", pf.transfer.contraction},
          {"inverse_error", pf.transfer.inverse_error},
          {"neumann_iterations", pf.transfer.iterations},
          {"inverse_residual", pf.witness.inverse_residual},
          {"residual_xz", pf.residual_xz},
          {"residual_wy", pf.residual_wy},
          {"frame_xz", encode(pf.frame_xz)},
          {"frame_wy", encode(pf.frame_wy)}};
}

inline json encode(const BesselianCertificate& c) {
  return {{"L_xz", encode(c.besselian_xz)},
          {"L_wy", encode(c.besselian_wy)},
          {"inverse_norm", encode(c.inverse_norm)},
          {"bound", encode_extended(c.bound)},
          {"holds", c.holds},
          {"refuted", c.refuted}};
}

inline json encode(const DimensionCertificate& c) {
  return {{"N", c.n},
          {"tail", encode(c.tail)},
          {"method", std::string(dimension_method_name(c.method))},
          {"valid", c.valid},
          {"sharp", c.sharp}};
}

inline json encode(const SpanCheck& s) {
  return {{"rank_lhs", s.rank_lhs}, {"rank_rhs", s.rank_rhs}, {"rank_joint", s.rank_joint}, {"equal", s.equal}};
}

inline json encode(const SpanReport& s) {
  return {{"u_equals_V", encode(s.u_equals_v)},
          {"z_equals_W_composed_with_R", encode(s.z_equals_image_of_w)},
          {"v_equals_W", encode(s.v1_equals_w)},
          {"w_equals_R_V", encode(s.w_equals_image_of_v)},
          {"witness_residual", s.witness_residual},
          {"passed", s.passed}};
}

inline json encode(const TargetedFrames& t) {
  json idx = json::array();
  for (auto n : t.interleaving.targeted()) idx.push_back(n);
  json scalars = json::array();
  for (double s : t.scalars.t) scalars.push_back(s);
  return {{"indices", idx},
          {"total", t.interleaving.total()},
          {"scalars", scalars},
          {"weighted_sum", t.scalars.weighted_sum},
          {"report", encode(t.report)},
          {"interleaved", encode(t.interleaved)},
          {"perturbed", encode(t.frames)},
          {"spans", encode(t.spans)}};
}

}  // namespace schauder::io
