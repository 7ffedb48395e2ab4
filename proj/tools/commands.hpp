#pragma once

// Subcommand bodies of the `schauder` tool. Each takes parsed JSON and
// options and returns the JSON report plus the process exit code, so the
// commands can be exercised without spawning a process.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schauder/schauder.hpp"

namespace schauder::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kInputError = 1, kUnsatisfied = 2 };

struct Outcome {
  json report;
  int exit_code = kOk;
};

inline Exponent parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return Exponent::infinity();
  std::size_t pos = 0;
  const double p = std::stod(s, &pos);
  if (pos != s.size()) throw PreconditionError("cannot parse exponent '" + s + "'");
  return Exponent(p);
}

inline std::vector<std::size_t> parse_indices(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto token = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (token.empty()) throw PreconditionError("empty entry in index list '" + s + "'");
    std::size_t pos = 0;
    const long v = std::stol(token, &pos);
    if (pos != token.size() || v < 1) throw PreconditionError("bad index '" + token + "'");
    out.push_back(static_cast<std::size_t>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Outcome cmd_validate(const json& frame, double tol) {
  const FramePair f = io::decode_frame(frame);
  const auto v = validate_frame(f, tol);
  return {io::encode(v), v.is_frame ? kOk : kUnsatisfied};
}

struct ConstantsOptions {
  EnumerationMode mode = EnumerationMode::automatic;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double tol = kFrameTol;
};

inline Outcome cmd_constants(const json& frame, const ConstantsOptions& opts) {
  const FramePair f = io::decode_frame(frame);
  const auto v = validate_frame(f, opts.tol);
  if (!v.is_frame) {
    return {{{"residual", v.residual}, {"is_frame", false}}, kUnsatisfied};
  }
  BilinearOptions bopts;
  bopts.seed = opts.seed;
  bopts.norm.seed = opts.seed;
  NormOptions nopts;
  nopts.seed = opts.seed;
  const auto k = frame_constant_K(f, opts.tol, nopts);
  const auto l = besselian_constant(f, opts.mode, bopts);
  const auto diag = besselian_diagnostic(f, opts.samples, opts.seed);
  json report = {{"K", io::encode(k)},
                 {"L", io::encode(l)},
                 {"residual", v.residual},
                 {"crude_sum", crude_besselian_sum(f)},
                 {"diagnostic",
                  {{"samples", diag.samples},
                   {"seed", opts.seed},
                   {"max_ratio", diag.max_ratio},
                   {"within_bound", diag.max_ratio <= l.upper + 1e-9}}}};
  return {report, kOk};
}

inline Outcome cmd_check(const json& perturbation, Criterion id, double tol) {
  const auto cand = io::decode_candidate(perturbation);
  CriterionOptions opts;
  opts.frame_tol = tol;
  const auto report = evaluate_criterion(id, cand, opts);
  return {io::encode(report), report.satisfied ? kOk : kUnsatisfied};
}

struct PerturbOptions {
  Criterion criterion = Criterion::thm31;
  bool force = false;
  double frame_tol = kFrameTol;
  double neumann_tol = 1e-12;
};

inline Outcome cmd_perturb(const json& perturbation, const PerturbOptions& opts) {
  const auto input = io::decode_candidate(perturbation);
  CriterionOptions copts;
  copts.frame_tol = opts.frame_tol;
  const auto report = evaluate_criterion(opts.criterion, input, copts);
  if (!report.satisfied && !opts.force) {
    return {{{"report", io::encode(report)}, {"error", "criterion not satisfied; use --force"}},
            kUnsatisfied};
  }
  const auto cand = effective_candidate(opts.criterion, input);
  EmitOptions eopts;
  eopts.tol = opts.neumann_tol;
  eopts.force = opts.force;
  const auto pf = emit_perturbed_frames(cand, report, eopts);
  json out = {{"report", io::encode(report)}, {"certificate", io::encode(pf)}};
  if (is_besselian_criterion(opts.criterion)) {
    const auto base_l = besselian_constant(cand.base(), EnumerationMode::automatic);
    out["besselian_certificate"] = io::encode(besselian_certificate(pf, report.value, base_l));
    out["besselian_certificate"]["L_F"] = io::encode(base_l);
  }
  return {out, kOk};
}

struct DimensionOptions {
  bool sharp = false;
  std::optional<json> vectors;      // x0_1..x0_N
  std::optional<json> functionals;  // y0_1..y0_N
};

inline Outcome cmd_dimension(const json& frame, const DimensionOptions& opts) {
  const FramePair f = io::decode_frame(frame);
  if (opts.vectors && opts.functionals) {
    throw PreconditionError("give replacement vectors or functionals, not both");
  }
  DimensionCertificate cert;
  if (opts.vectors) {
    const auto xs = io::decode_vectors(*opts.vectors);
    cert = dimension_bound_vectors(f, xs, xs.size());
  } else if (opts.functionals) {
    const auto ys = io::decode_functionals(*opts.functionals);
    cert = dimension_bound_functionals(f, ys, ys.size());
  } else {
    cert = remark38_minimal_N(f, opts.sharp);
  }
  json out = io::encode(cert);
  out["dim"] = f.space().dim();
  out["check"] = cert.valid ? "dim <= N verified against the ambient dimension"
                            : "tail not below 1; no conclusion";
  return {out, cert.valid ? kOk : kUnsatisfied};
}

struct ConstructOptions {
  std::vector<std::size_t> indices;
  double theta = 0.5;
  bool besselian = false;
};

inline Outcome cmd_construct(const json& frame, const json& v, const json& w,
                             const ConstructOptions& opts) {
  const FramePair f = io::decode_frame(frame);
  const auto vs = SubspaceSpec::of(io::decode_vectors(v));
  const auto ws = SubspaceSpec::of(io::decode_functionals(w));
  IndexInterleaving idx(f.size() + opts.indices.size(), opts.indices);
  const auto result = construct_targeted_frames(f, vs, ws, idx, opts.theta, opts.besselian);
  return {io::encode(result), result.spans.passed ? kOk : kUnsatisfied};
}

struct GenOptions {
  Index dim = 2;
  Index count = 3;
  Exponent p{2.0};
  gen::FrameKind kind = gen::FrameKind::tight;
  std::uint64_t seed = 0;
};

inline Outcome cmd_gen(const GenOptions& opts) {
  return {io::encode(gen::make(opts.kind, opts.dim, opts.count, opts.p, opts.seed)), kOk};
}

}  // namespace schauder::cli
