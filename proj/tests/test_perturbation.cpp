#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace schauder;

namespace {

const PNormSpace kR2(2, Exponent(2.0));

FramePair canonical2() { return gen::canonical(kR2); }

PerturbationCandidate stretched_vector() {
  return PerturbationCandidate::with_vectors(canonical2(), {Vector{1.1, 0}, Vector{0, 1}});
}

PerturbationCandidate stretched_functional() {
  return PerturbationCandidate::with_functionals(canonical2(), {Functional{1.05, 0}, Functional{0, 1}});
}

PerturbationCandidate identity_candidate(const FramePair& f) {
  return {f, std::vector<Pair>(f.pairs().begin(), f.pairs().end())};
}

TEST(Candidate, LengthAndSpaceChecked) {
  const auto f = canonical2();
  EXPECT_THROW(PerturbationCandidate(f, {{Vector{1, 0}, Functional{1, 0}}}), DimensionMismatch);
  EXPECT_THROW(PerturbationCandidate(f, {{Vector{1, 0}, Functional{1, 0}}, {Vector{0, 1, 0}, Functional{0, 1}}}),
               DimensionMismatch);
  EXPECT_THROW(PerturbationCandidate::with_vectors(f, {Vector{1, 0}}), DimensionMismatch);
  EXPECT_THROW(parse_criterion("thm99"), PreconditionError);
  EXPECT_EQ(parse_criterion("cor36"), Criterion::cor36);
}

// Hand-evaluated formula values on the canonical basis of R^2, p = 2, K_F = 1.
TEST(SchauderCriterion, Examples) {
  EXPECT_EQ(criterion_thm31(identity_candidate(canonical2())).value.upper, 0.0);
  const auto v = criterion_thm31(stretched_vector());
  EXPECT_NEAR(v.value.upper, 2.0 * 1.0 * 0.1 / 1.0, 1e-15);
  EXPECT_TRUE(v.satisfied);
  EXPECT_NEAR(v.margin, 0.8, 1e-15);
  EXPECT_NEAR(criterion_thm31(stretched_functional()).value.upper, 0.05 * 1.0, 1e-15);
}

TEST(SchauderCriterion, ZeroVectorBranch) {
  // a_2 = 0 pairs with b_2 = 0; moving x_2 off zero costs |b_2||x_2| = 0.
  const FramePair f(kR2, {{Vector{1, 0}, Functional{1, 0}}, {Vector{0, 0}, Functional{0, 0}},
                          {Vector{0, 1}, Functional{0, 1}}});
  const PerturbationCandidate c(f, {{Vector{1, 0}, Functional{1, 0}}, {Vector{0.3, 0}, Functional{0, 0}},
                                    {Vector{0, 1}, Functional{0, 1}}});
  EXPECT_EQ(criterion_thm31(c).value.upper, 0.0);
  // With a nonzero b_2 the third sum is charged.
  const FramePair g(kR2, {{Vector{1, 0}, Functional{1, 0}}, {Vector{0, 0}, Functional{0.5, 0}},
                          {Vector{0, 1}, Functional{0, 1}}});
  const PerturbationCandidate d(g, {{Vector{1, 0}, Functional{1, 0}}, {Vector{0.3, 0}, Functional{0.5, 0}},
                                    {Vector{0, 1}, Functional{0, 1}}});
  EXPECT_NEAR(criterion_thm31(d).value.upper, 0.5 * 0.3, 1e-15);
}

TEST(SchauderCriterion, StrictInequality) {
  // Q exactly 1 is unsatisfied: x_1 = 1.5 e_1 gives 2 * 0.5 = 1.
  const auto c = PerturbationCandidate::with_vectors(canonical2(), {Vector{1.5, 0}, Vector{0, 1}});
  const auto r = criterion_thm31(c);
  EXPECT_EQ(r.value.upper, 1.0);
  EXPECT_FALSE(r.satisfied);
}

TEST(BesselianSumCriterion, Examples) {
  EXPECT_EQ(criterion_cor34(identity_candidate(canonical2())).value.upper, 0.0);
  EXPECT_NEAR(criterion_cor34(stretched_vector()).value.upper, 0.1, 1e-15);
  EXPECT_NEAR(criterion_cor34(stretched_functional()).value.upper, 0.05, 1e-15);
}

TEST(AbsoluteSumCriterion, Examples) {
  EXPECT_EQ(criterion_thm33(identity_candidate(canonical2())).value.upper, 0.0);
  EXPECT_NEAR(criterion_thm33(stretched_vector()).value.upper, 0.1, 1e-15);
  EXPECT_NEAR(criterion_thm33(stretched_functional()).value.upper, 0.05, 1e-15);
  // Oracle re-enumeration of D_1 = 0.1 e1 e1^T, D_2 = 0.
  EXPECT_NEAR(oracle::sign_enum_bilinear(testkit::dense_terms(perturbation_terms(stretched_vector())), 2.0), 0.1,
              1e-15);
}

TEST(OneSidedCriteria, Examples) {
  const auto f = canonical2();
  EXPECT_EQ(criterion_cor35(f, {Vector{1, 0}, Vector{0, 1}}).value.upper, 0.0);
  EXPECT_EQ(criterion_cor36(f, {Functional{1, 0}, Functional{0, 1}}).value.upper, 0.0);
  const auto r35 = criterion_cor35(f, {Vector{1.1, 0}, Vector{0, 1}});
  EXPECT_EQ(r35.id, Criterion::cor35);
  EXPECT_NEAR(r35.value.upper, 0.1, 1e-15);
  EXPECT_NEAR(criterion_cor36(f, {Functional{1.05, 0}, Functional{0, 1}}).value.upper, 0.05, 1e-15);
}

TEST(OneSidedCriteria, MercedesAgainstOracleEnumeration) {
  const auto m = gen::mercedes();
  std::vector<Vector> xs{m[0].a, m[1].a, m[2].a};
  xs[0] = Vector{0.1, 1.05};
  const auto r35 = criterion_cor35(m, xs);
  std::vector<oracle::Mat> d35{(xs[0].coords - m[0].a.coords) * m[0].b.coords.transpose()};
  EXPECT_NEAR(r35.value.upper, oracle::sign_enum_bilinear(d35, 2.0), 1e-12);
  EXPECT_TRUE(r35.value.exact);

  std::vector<Functional> ys{m[0].b, m[1].b, m[2].b};
  ys[1] = Functional(ys[1].coords + Coords{{0.04, -0.02}});
  ys[2] = Functional(ys[2].coords * 0.95);
  const auto r36 = criterion_cor36(m, ys);
  std::vector<oracle::Mat> d36;
  for (int n = 0; n < 3; ++n) d36.push_back(m[n].a.coords * (ys[n].coords - m[n].b.coords).transpose());
  EXPECT_NEAR(r36.value.upper, oracle::sign_enum_bilinear(d36, 2.0), 1e-12);
}

TEST(BuildTransfer, Examples) {
  EXPECT_LE(testkit::max_abs_diff(build_transfer(identity_candidate(gen::mercedes())), Operator::Identity(2, 2)),
            1e-15);
  Operator t1(2, 2), t2(2, 2);
  t1 << 1.1, 0, 0, 1;
  t2 << 1.05, 0, 0, 1;
  EXPECT_EQ(build_transfer(stretched_vector()), t1);
  EXPECT_EQ(build_transfer(stretched_functional()), t2);
}

TEST(NeumannInverse, Examples) {
  const auto id = neumann_inverse(kR2, Operator::Identity(2, 2), 0.0);
  EXPECT_EQ(id.iterations, 0u);
  EXPECT_EQ(id.error_bound, 0.0);
  EXPECT_EQ(id.inverse, Operator::Identity(2, 2));

  for (auto [diag, q] : {std::pair{1.1, 0.2}, std::pair{0.9, 0.1}}) {
    Operator t(2, 2);
    t << diag, 0, 0, 1;
    const auto r = neumann_inverse(kR2, t, q, 1e-12);
    const auto direct = oracle::direct_inverse(t);
    EXPECT_LE(testkit::max_abs_diff(r.inverse, direct), 1e-12);
    EXPECT_NEAR(r.inverse(0, 0), 1.0 / diag, 1e-12);
    EXPECT_LE(r.error_bound, 1e-12);
  }
}

TEST(NeumannInverse, Errors) {
  Operator t(2, 2);
  t << 1.1, 0, 0, 1;
  EXPECT_THROW(neumann_inverse(kR2, t, 1.0), PreconditionError);
  EXPECT_THROW(neumann_inverse(kR2, t, -0.1), PreconditionError);
  EXPECT_THROW(neumann_inverse(kR2, t, 0.05), PreconditionError);  // |T - I| = 0.1 > 0.05
  EXPECT_THROW(neumann_inverse(kR2, t, 0.2, 0.0), PreconditionError);
  Operator slow(2, 2);
  slow << 1.0 - 0.999999, 0, 0, 1;
  EXPECT_THROW(neumann_inverse(kR2, slow, 0.999999, 1e-12, 1000), NumericalFailure);
  EXPECT_THROW(neumann_inverse(kR2, Operator::Identity(3, 3), 0.0), DimensionMismatch);
}

TEST(EmitPerturbedFrames, Examples) {
  const auto base = identity_candidate(gen::mercedes());
  const auto same = emit_perturbed_frames(base, criterion_thm31(base));
  EXPECT_TRUE(same.certified);
  EXPECT_LE(testkit::max_abs_diff(same.transfer.forward, Operator::Identity(2, 2)), 1e-15);
  for (std::size_t n = 0; n < 3; ++n) {
    EXPECT_LE((same.frame_xz[n].b.coords - base.base()[n].b.coords).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((same.frame_wy[n].a.coords - base.base()[n].a.coords).cwiseAbs().maxCoeff(), 1e-15);
  }

  const auto c = stretched_vector();
  const auto pf = emit_perturbed_frames(c, criterion_thm31(c));
  EXPECT_TRUE(pf.certified);
  EXPECT_NEAR(pf.frame_xz[0].b.coords[0], 1.0 / 1.1, 1e-12);
  EXPECT_NEAR(pf.frame_xz[0].b.coords[1], 0.0, 1e-15);
  EXPECT_EQ(pf.frame_xz[1].b.coords, (Coords{{0.0, 1.0}}));
  EXPECT_LE(pf.residual_xz, 1e-12);
  EXPECT_NEAR(pf.frame_wy[0].a.coords[0], 1.0, 1e-12);
  EXPECT_EQ(pf.frame_wy[1].a.coords, (Coords{{0.0, 1.0}}));
}

TEST(EmitPerturbedFrames, Unsatisfied) {
  const auto c = PerturbationCandidate::with_vectors(canonical2(), {Vector{1.5, 0}, Vector{0, 1}});
  const auto r = criterion_thm31(c);
  EXPECT_THROW(emit_perturbed_frames(c, r), CriterionUnsatisfied);
  EmitOptions force;
  force.force = true;
  const auto pf = emit_perturbed_frames(c, r, force);  // |T - I| = 0.5 still contracts
  EXPECT_FALSE(pf.certified);
  EXPECT_LE(pf.residual_xz, 1e-8);

  const auto far = PerturbationCandidate::with_vectors(canonical2(), {Vector{3, 0}, Vector{0, 1}});
  EXPECT_THROW(emit_perturbed_frames(far, criterion_thm31(far), force), NumericalFailure);
}

TEST(BesselianCertificate, Examples) {
  const auto base = identity_candidate(canonical2());
  const auto lf = besselian_constant(canonical2());
  const auto r0 = criterion_cor34(base);
  const auto c0 = besselian_certificate(emit_perturbed_frames(base, r0), r0.value, lf);
  EXPECT_TRUE(c0.holds);
  EXPECT_DOUBLE_EQ(c0.besselian_xz.upper, 1.0);
  EXPECT_DOUBLE_EQ(c0.bound, 1.0);

  const auto v = stretched_vector();
  const auto rv = criterion_thm33(v);
  const auto cv = besselian_certificate(emit_perturbed_frames(v, rv), rv.value, lf);
  EXPECT_TRUE(cv.holds);
  EXPECT_NEAR(cv.besselian_xz.upper, 1.0, 1e-12);
  EXPECT_NEAR(cv.besselian_wy.upper, 1.0, 1e-12);
  EXPECT_NEAR(cv.bound, 1.1 * 1.0, 1e-12);

  const auto f = stretched_functional();
  const auto rf = criterion_thm33(f);
  const auto cf = besselian_certificate(emit_perturbed_frames(f, rf), rf.value, lf);
  EXPECT_TRUE(cf.holds);
  EXPECT_NEAR(cf.besselian_xz.upper, 1.0, 1e-12);
  EXPECT_NEAR(cf.bound, 1.05 * std::max(1.0 / 1.05, 1.0), 1e-12);
}

// Property tests over random candidates.

TEST(PerturbationProperties, TransferCloseToIdentityUnderCriteria) {
  std::mt19937_64 rng(31);
  int checked31 = 0, checked33 = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Exponent p = testkit::closed_form_exponent(rng);
    const auto f = testkit::random_frame(rng, 4, 9, p);
    const auto c = testkit::contracting_candidate(f, rng);
    if (!c) continue;
    const double dist = operator_norm(c->space(), build_transfer(*c) - Operator::Identity(f.space().dim(), f.space().dim())).upper;
    const auto q = criterion_thm31(*c);
    if (q.satisfied) {
      EXPECT_LE(dist, q.value.upper + 1e-9);
      ++checked31;
    }
    const auto a = criterion_thm33(*c);
    if (a.satisfied) {
      EXPECT_LE(dist, a.value.upper + 1e-9);
      ++checked33;
    }
  }
  EXPECT_GT(checked31, 50);
  EXPECT_GT(checked33, 50);
}

TEST(PerturbationProperties, DominanceAndSubstitution) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 150; ++trial) {
    const auto f = testkit::random_frame(rng, 4, 9, testkit::closed_form_exponent(rng));
    const PerturbationCandidate c(f, testkit::perturb_pairs(f, 0.2, rng));
    const auto a = criterion_thm33(c);
    EXPECT_LE(a.value.upper, criterion_cor34(c).value.upper + 1e-9);

    std::vector<Vector> xs;
    std::vector<Functional> ys;
    for (const auto& pr : c.candidate()) {
      xs.push_back(pr.a);
      ys.push_back(pr.b);
    }
    EXPECT_EQ(criterion_cor35(f, xs).value.upper,
              criterion_thm33(PerturbationCandidate::with_vectors(f, xs)).value.upper);
    EXPECT_EQ(criterion_cor36(f, ys).value.upper,
              criterion_thm33(PerturbationCandidate::with_functionals(f, ys)).value.upper);
  }
}

TEST(PerturbationProperties, EmissionRoundTripAndWitness) {
  std::mt19937_64 rng(33);
  int emitted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = testkit::random_frame(rng, 4, 9, testkit::closed_form_exponent(rng));
    const auto c = testkit::contracting_candidate(f, rng);
    if (!c) continue;
    const auto pf = emit_perturbed_frames(*c, criterion_thm31(*c));
    ++emitted;
    EXPECT_TRUE(pf.certified);
    const Index d = f.space().dim();
    EXPECT_LE(testkit::max_abs_diff(pf.frame_xz.resolution(), Operator::Identity(d, d)), 1e-8);
    EXPECT_LE(testkit::max_abs_diff(pf.frame_wy.resolution(), Operator::Identity(d, d)), 1e-8);
    const Operator& r = pf.transfer.inverse;
    for (std::size_t n = 0; n < c->size(); ++n) {
      const Pair& cp = c->candidate()[n];
      EXPECT_LE((pf.frame_wy[n].a.coords - r * cp.a.coords).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LE((pf.frame_xz[n].b.coords - r.transpose() * cp.b.coords).cwiseAbs().maxCoeff(), 1e-9);
    }
    // Neumann soundness against the oracle's direct inverse.
    const auto direct = oracle::direct_inverse(pf.transfer.forward);
    EXPECT_LE(oracle::exact_norm(r - direct, f.space().p().value()), pf.transfer.inverse_error + 1e-10);
    EXPECT_LE(pf.witness.inverse_residual, 1e-8);
  }
  EXPECT_GT(emitted, 50);
}

TEST(PerturbationProperties, BesselianCertificateHolds) {
  std::mt19937_64 rng(34);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = testkit::random_frame(rng, 3, 8, testkit::closed_form_exponent(rng));
    const PerturbationCandidate c(f, testkit::perturb_pairs(f, 0.02, rng));
    const auto a = criterion_thm33(c);
    if (!a.satisfied) continue;
    const auto pf = emit_perturbed_frames(c, a);
    const auto cert = besselian_certificate(pf, a.value, besselian_constant(f));
    EXPECT_TRUE(cert.holds);
    EXPECT_FALSE(cert.refuted);
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

}  // namespace
