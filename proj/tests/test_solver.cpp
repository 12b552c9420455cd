#include <gtest/gtest.h>

#include <cmath>

#include "pcpkit/constructions.hpp"
#include "pcpkit/errors.hpp"
#include "pcpkit/rng.hpp"
#include "pcpkit/solver.hpp"
#include "test_util.hpp"

using namespace pcpkit;
using test::dist;
using test::vec;

namespace {

PolynomialMap cube2() { return PolynomialMap::homogeneous(diagonal_power_tensor(2, 3)); }

bool contains(const SolveReport& r, const Vector& x, double tol) {
  for (const Solution& s : r.solutions)
    if (dist(s.x, x) <= tol) return true;
  return false;
}

}  // namespace

TEST(Solve, IdentityMap) {
  const SolveReport r = solve(PcpInstance(PolynomialMap::identity(2), vec({-1, -2})));
  ASSERT_EQ(r.status, SolveStatus::kSolved);
  EXPECT_LT(dist(r.solutions.at(0).x, vec({1, 2})), 1e-8);
  EXPECT_TRUE(r.solutions[0].residuals.pass);
}

TEST(Solve, ExampleThreeAtK1) {
  const PcpInstance inst(example3_map(), example3_q(1));
  const SolveReport r = solve(inst);
  ASSERT_EQ(r.status, SolveStatus::kSolved);
  EXPECT_LE(r.solutions[0].residuals.max_violation, 1e-8);
}

TEST(Solve, CubeWithMixedQ) {
  const SolveReport r = solve(PcpInstance(cube2(), vec({-8, 1})));
  ASSERT_EQ(r.status, SolveStatus::kSolved);
  EXPECT_LT(dist(r.solutions[0].x, vec({2, 0})), 1e-7);
}

TEST(Solve, SameSeedSameAnswer) {
  const PcpInstance inst(PolynomialMap::homogeneous(example1_tensor()), vec({-1, -1}));
  SolveConfig cfg;
  cfg.seed = 5;
  const SolveReport a = solve(inst, cfg), b = solve(inst, cfg);
  ASSERT_EQ(a.status, b.status);
  ASSERT_EQ(a.solutions.size(), b.solutions.size());
  if (!a.solutions.empty()) EXPECT_EQ(a.solutions[0].x, b.solutions[0].x);
}

TEST(Solve, ConfigValidation) {
  SolveConfig cfg;
  cfg.newton_max_iters = 0;
  EXPECT_THROW(cfg.validate(), InvalidInput);
  cfg = SolveConfig{};
  cfg.feasibility_tol = -1;
  EXPECT_THROW(solve(PcpInstance(cube2(), vec({1, 1})), cfg), InvalidInput);
}

TEST(Verify, ResidualComponents) {
  const PcpInstance inst(PolynomialMap::identity(2), vec({-1, -2}));
  EXPECT_TRUE(verify_solution(inst, vec({1, 2}), 1e-12).pass);
  const ResidualReport bad = verify_solution(inst, vec({-1, 2}), 1e-8);
  EXPECT_FALSE(bad.pass);
  EXPECT_DOUBLE_EQ(bad.nonnegativity, 1.0);
  EXPECT_DOUBLE_EQ(bad.feasibility, 2.0);
  const ResidualReport comp =
      verify_solution(PcpInstance(PolynomialMap::identity(2), vec({1, 1})), vec({1, 0}), 1e-8);
  EXPECT_DOUBLE_EQ(comp.complementarity, 2.0);
  EXPECT_FALSE(comp.pass);
}

TEST(Enumerate, TwoSolutionInstance) {
  const SolveReport r = enumerate_solutions(remark5_instance(remark5_tensor()));
  ASSERT_EQ(r.solutions.size(), 2u);
  EXPECT_TRUE(contains(r, vec({0, 0}), 1e-8));
  EXPECT_TRUE(contains(r, vec({1, 1}), 1e-8));
  EXPECT_EQ(r.status, SolveStatus::kAllSolutionsEnumerated);
}

TEST(Enumerate, IdentityPositiveQ) {
  const SolveReport r = enumerate_solutions(PcpInstance(PolynomialMap::identity(2), vec({1, 1})));
  ASSERT_EQ(r.solutions.size(), 1u);
  EXPECT_TRUE(r.solutions[0].x.isZero(1e-12));
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.patterns.size(), 4u);
}

TEST(Enumerate, ExampleOneTensor) {
  // (Ax)^[3] = e has the unique root x = A^{-1} e = (3, 4)
  const SolveReport r =
      enumerate_solutions(PcpInstance(PolynomialMap::homogeneous(example1_tensor()), vec({-1, -1})));
  ASSERT_EQ(r.solutions.size(), 1u);
  EXPECT_LT(dist(r.solutions[0].x, vec({3, 4})), 1e-7);
}

TEST(Enumerate, NoSolutionOnPatternSystemsWithoutRoots) {
  // -x + q with q < 0 has no solution
  const SolveReport r =
      enumerate_solutions(PcpInstance(PolynomialMap::linear(-Matrix::Identity(2, 2)), vec({-1, -1})));
  EXPECT_TRUE(r.solutions.empty());
}

TEST(SolInfty, CubeIsZeroOnly) {
  EXPECT_TRUE(check_sol_infty_zero(cube2()).zero_only);
  EXPECT_TRUE(check_sol_infty_zero(PolynomialMap::homogeneous(example1_tensor())).zero_only);
}

TEST(SolInfty, ExampleTwoHasRayWitness) {
  const SolInftyVerdict v = check_sol_infty_zero(example2_map());
  ASSERT_FALSE(v.zero_only);
  EXPECT_NEAR(v.witness.norm(), 1.0, 1e-9);
  EXPECT_LT(dist(v.witness, vec({1, 0})), 1e-6);
}

TEST(ConeRoots, DedupAndUnitNorm) {
  const std::vector<Vector> roots = find_cone_roots(example2_map().leading_term());
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_NEAR(roots[0].norm(), 1.0, 1e-12);
}

TEST(Boundedness, CubeOnUnitBall) {
  Rng rng(3);
  std::vector<Vector> K;
  while (K.size() < 100) {
    const Vector q = rng.uniform_vector(2, -1, 1);
    if (q.norm() <= 1) K.push_back(q);
  }
  const BoundednessReport b = boundedness_probe(cube2(), K);
  EXPECT_EQ(b.solved, 100);
  EXPECT_FALSE(b.boundary_hit);
  EXPECT_LE(b.max_norm, 2.0);
  EXPECT_TRUE(b.stable);
}

TEST(Boundedness, RejectsNonR0Leading) {
  EXPECT_THROW(boundedness_probe(example2_map(), {vec({1, 1})}), InvalidInput);
}

TEST(Certify, ExampleTwoUnsolvable) {
  const UnsolvabilityCertificate c =
      certify_unsolvable(PcpInstance(example2_map(), example2_q()), vec({0, 0}), vec({1, 1}), 1e-3);
  EXPECT_TRUE(c.certified);
  EXPECT_GT(c.min_grid_residual, c.margin * c.grid_step);
}

TEST(Certify, SolvableInstanceNotCertified) {
  const UnsolvabilityCertificate c = certify_unsolvable(
      PcpInstance(PolynomialMap::identity(2), vec({1, 1})), vec({0, 0}), vec({2, 2}), 1e-2);
  EXPECT_FALSE(c.certified);
  EXPECT_LT(c.min_grid_residual, 1e-12);
}

TEST(Certify, RejectsBadBox) {
  EXPECT_THROW(certify_unsolvable(PcpInstance(PolynomialMap::identity(2), vec({1, 1})),
                                  vec({1, 0}), vec({0, 1}), 1e-2),
               InvalidInput);
}

TEST(PatternAnalysis, ExampleThreeLimitHasNoInteriorSolution) {
  const PcpInstance inst(example3_map(), example3_limit_q());
  const PatternConsistency p = analyze_pattern_system(inst, 0b11);
  EXPECT_EQ(p.verdict, PatternConsistency::Verdict::kInconsistent) << p.reason;
}
