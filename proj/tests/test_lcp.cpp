#include <gtest/gtest.h>

#include "pcpkit/constructions.hpp"
#include "pcpkit/errors.hpp"
#include "pcpkit/lcp.hpp"
#include "pcpkit/newton.hpp"
#include "pcpkit/rng.hpp"
#include "test_util.hpp"

using namespace pcpkit;
using test::dist;
using test::mat2;
using test::vec;

TEST(Lemke, IdentityMatrix) {
  const LcpResult r = lemke_solve(LcpInstance(Matrix::Identity(2, 2), vec({-1, -2})));
  ASSERT_EQ(r.status, LcpStatus::kSolved);
  EXPECT_LT(dist(r.solutions.at(0), vec({1, 2})), 1e-12);
}

TEST(Lemke, NonnegativeQGivesOrigin) {
  const LcpResult r = lemke_solve(LcpInstance(example1_matrix(), vec({1, 1})));
  ASSERT_EQ(r.status, LcpStatus::kSolved);
  EXPECT_TRUE(r.solutions.at(0).isZero());
  EXPECT_EQ(r.work, 0);
}

TEST(Lemke, ExampleOneMatrixRayTerminates) {
  // Covering-vector Lemke ends on a secondary ray here, although (3,4) solves
  // the problem; the enumeration oracle is used for this instance.
  const LcpResult r = lemke_solve(LcpInstance(example1_matrix(), vec({-1, -1})));
  EXPECT_EQ(r.status, LcpStatus::kRayTermination);
  EXPECT_TRUE(r.solutions.empty());
}

TEST(Lemke, AgreesWithEnumerationOnPMatrices) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 3;
    Matrix b = rng.uniform_matrix(n, n, -1, 1);
    const Matrix m = b * b.transpose() + 0.5 * Matrix::Identity(n, n);  // positive definite
    const Vector q = rng.uniform_vector(n, -2, 2);
    const LcpInstance inst(m, q);
    const LcpResult l = lemke_solve(inst);
    const LcpResult e = lcp_enumerate(inst);
    ASSERT_EQ(l.status, LcpStatus::kSolved);
    ASSERT_EQ(e.solutions.size(), 1u);
    EXPECT_LT(dist(l.solutions[0], e.solutions[0]), 1e-9);
    EXPECT_LT(lcp_violation(inst, l.solutions[0]), 1e-10);
  }
}

TEST(Lemke, BudgetExhausted) {
  EXPECT_THROW(lemke_solve(LcpInstance(mat2(2, 1, 1, 2), vec({-1, -1})), 1), BudgetExhausted);
}

TEST(LcpEnumerate, Examples) {
  const LcpResult id = lcp_enumerate(LcpInstance(Matrix::Identity(2, 2), vec({1, 1})));
  ASSERT_EQ(id.solutions.size(), 1u);
  EXPECT_TRUE(id.solutions[0].isZero());

  const LcpResult ex1 = lcp_enumerate(LcpInstance(example1_matrix(), vec({-1, -1})));
  ASSERT_EQ(ex1.solutions.size(), 1u);
  EXPECT_LT(dist(ex1.solutions[0], vec({3, 4})), 1e-12);
  EXPECT_FALSE(ex1.non_isolated);
}

TEST(LcpEnumerate, NonR0MatrixFlagsSingularPattern) {
  const LcpResult r = lcp_enumerate(LcpInstance(mat2(0, 0, 0, 1), vec({0, 0})));
  EXPECT_TRUE(r.non_isolated);
  ASSERT_FALSE(r.singular_patterns.empty());
  bool axis = false;
  for (const SingularPattern& s : r.singular_patterns) axis = axis || (s.support == 1u && s.consistent);
  EXPECT_TRUE(axis);
  EXPECT_FALSE(lcp_is_r0(mat2(0, 0, 0, 1)));
  EXPECT_TRUE(lcp_is_r0(example1_matrix()));
}

TEST(LcpEnumerate, MultipleSolutions) {
  // N-matrix with q > 0 small: 0 plus interior pieces
  const LcpResult r = lcp_enumerate(LcpInstance(mat2(-1, 2, 2, -1), vec({1, 1})));
  EXPECT_GE(r.solutions.size(), 2u);
  for (const Vector& x : r.solutions)
    EXPECT_LT(lcp_violation(LcpInstance(mat2(-1, 2, 2, -1), vec({1, 1})), x), 1e-10);
}

TEST(LcpDegree, Examples) {
  EXPECT_EQ(lcp_degree(Matrix::Identity(2, 2), 1).value, 1);
  EXPECT_EQ(lcp_degree(Matrix::Identity(3, 3), 1).value, 1);
  EXPECT_EQ(lcp_degree(example1_matrix(), 1).value, -1);
  EXPECT_EQ(lcp_degree(mat2(2, 1, 0, 1), 1).value, 1);
  // min{x, -x} = -|x| misses the positive orthant
  EXPECT_EQ(lcp_degree(-Matrix::Identity(2, 2), 1).value, 0);
}

TEST(LcpDegree, SeedIndependentAndEvidence) {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const DegreeEstimate d = lcp_degree(example1_matrix(), s);
    EXPECT_EQ(d.value, -1);
    int sum = 0;
    for (const Preimage& p : d.preimages) sum += p.sign;
    EXPECT_EQ(sum, d.value);
    const double pn = d.regular_value.cwiseAbs().maxCoeff();
    EXPECT_GE(pn, 1e-3);
    EXPECT_LE(pn, 1e-2);
  }
}

TEST(LcpDegree, RejectsNonR0) {
  EXPECT_THROW(lcp_degree(mat2(0, 0, 0, 1), 1), InvalidInput);
}

TEST(Lcp, ViolationMeasure) {
  const LcpInstance inst(Matrix::Identity(2, 2), vec({1, 1}));
  EXPECT_EQ(lcp_violation(inst, vec({0, 0})), 0.0);
  EXPECT_GE(lcp_violation(inst, vec({1, 1})), 2.0);
}
