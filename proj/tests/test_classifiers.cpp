#include <gtest/gtest.h>

#include "pcpkit/classifiers.hpp"
#include "pcpkit/constructions.hpp"
#include "pcpkit/errors.hpp"
#include "test_util.hpp"

using namespace pcpkit;
using test::dist;
using test::mat2;
using test::vec;

namespace {

Tensor all_ones(int order, int dim) {
  return Tensor(order, dim, std::vector<double>(ipow(dim, order), 1.0));
}

}  // namespace

TEST(R0, Examples) {
  EXPECT_EQ(is_R0(diagonal_power_tensor(2, 3)).verdict, Verdict::kHoldsUpToSampling);
  EXPECT_TRUE(holds(is_R0(example1_tensor()).verdict));
  Tensor t(3, 2);
  t({1, 1, 1}) = 1.0;
  const ClassVerdict v = is_R0(t);
  ASSERT_EQ(v.verdict, Verdict::kFails);
  ASSERT_FALSE(v.witnesses.empty());
  EXPECT_LT(dist(v.witnesses[0], vec({1, 0})), 1e-6);
}

TEST(R, Examples) {
  EXPECT_TRUE(holds(is_R(diagonal_power_tensor(2, 3)).verdict));
  EXPECT_TRUE(holds(is_R(strong_m_tensor()).verdict));
  EXPECT_EQ(is_R(example1_tensor()).verdict, Verdict::kFails);
}

TEST(Copositive, Examples) {
  EXPECT_TRUE(holds(is_copositive(PolynomialMap::identity(2)).verdict));
  EXPECT_TRUE(holds(is_copositive(PolynomialMap::identity(2), true).verdict));
  const ClassVerdict neg = is_copositive(PolynomialMap::linear(-Matrix::Identity(2, 2)));
  ASSERT_EQ(neg.verdict, Verdict::kFails);
  EXPECT_FALSE(neg.witnesses.empty());
  EXPECT_TRUE(holds(is_copositive(example2_map().leading_term()).verdict));
  EXPECT_FALSE(holds(is_copositive(example2_map().leading_term(), true).verdict));
  EXPECT_TRUE(holds(
      is_copositive(PolynomialMap::homogeneous(strictly_copositive_tensor()), true).verdict));
}

TEST(Z, Examples) {
  EXPECT_EQ(is_Z_tensor(diagonal_power_tensor(2, 3)).verdict, Verdict::kHolds);
  EXPECT_EQ(is_Z_tensor(strong_m_tensor()).verdict, Verdict::kHolds);
  EXPECT_EQ(is_Z_tensor(all_ones(3, 2)).verdict, Verdict::kFails);
  EXPECT_EQ(is_Z_tensor(example1_tensor()).verdict, Verdict::kFails);
}

TEST(NonnegPosDiag, Examples) {
  EXPECT_EQ(is_nonneg_pos_diag(all_ones(3, 2)).verdict, Verdict::kHolds);
  EXPECT_EQ(is_nonneg_pos_diag(nonneg_pos_diag_tensor()).verdict, Verdict::kHolds);
  EXPECT_EQ(is_nonneg_pos_diag(example1_tensor()).verdict, Verdict::kFails);
  Tensor t(3, 2);
  t({0, 0, 0}) = 1.0;  // zero diagonal in component 2
  EXPECT_EQ(is_nonneg_pos_diag(t).verdict, Verdict::kFails);
}

TEST(StrongM, Examples) {
  EXPECT_EQ(is_strong_M(strong_m_tensor()).verdict, Verdict::kHolds);
  EXPECT_EQ(is_strong_M(diagonal_power_tensor(3, 3)).verdict, Verdict::kHolds);
  EXPECT_EQ(is_strong_M(all_ones(3, 2)).verdict, Verdict::kFails);
  EXPECT_NE(is_strong_M(Tensor::from_matrix(-Matrix::Identity(2, 2))).verdict, Verdict::kHolds);
}

TEST(Gus, Examples) {
  EXPECT_TRUE(holds(gus_probe(diagonal_power_tensor(2, 3)).verdict));
  const ClassVerdict v = gus_probe(example1_tensor());
  ASSERT_EQ(v.verdict, Verdict::kFails);
  EXPECT_GE(v.witnesses.size(), 3u);  // q followed by two solutions
}

TEST(StrongQ, Examples) {
  EXPECT_TRUE(holds(strong_q_probe(example1_tensor()).verdict));
  EXPECT_TRUE(holds(strong_q_probe(diagonal_power_tensor(2, 3)).verdict));
  Tensor t(3, 2);
  t({1, 1, 1}) = 1.0;
  EXPECT_EQ(strong_q_probe(t).verdict, Verdict::kFails);
}

TEST(PProperty, Examples) {
  EXPECT_TRUE(holds(p_property_check(PolynomialMap::identity(2)).verdict));
  EXPECT_TRUE(holds(p_property_check(PolynomialMap::homogeneous(diagonal_power_tensor(2, 3))).verdict));
  const ClassVerdict v = p_property_check(PolynomialMap::linear(mat2(0, 1, 1, 0)));
  ASSERT_EQ(v.verdict, Verdict::kFails);
  EXPECT_EQ(v.witnesses.size(), 2u);
}

TEST(ConeSample, ExampleTwo) {
  const ConeSample s = sol_cone_sample(example2_map().leading_term());
  EXPECT_FALSE(s.exact);
  ASSERT_EQ(s.generators.size(), 1u);
  EXPECT_LT(dist(s.generators[0], vec({1, 0})), 1e-6);
}

TEST(DualCone, Positions) {
  ConeSample s;
  s.generators = {vec({1, 0})};
  EXPECT_EQ(dual_interior_test(vec({2, -2}), s), DualPosition::kInterior);
  EXPECT_EQ(dual_interior_test(vec({0, 1}), s), DualPosition::kBoundary);
  EXPECT_EQ(dual_interior_test(vec({-1, 1}), s), DualPosition::kOutside);
  const ConeSample zero;  // S = {0}: the dual is everything
  EXPECT_EQ(dual_interior_test(vec({-1, -1}), zero), DualPosition::kInterior);
}

TEST(Verdict, Strings) {
  EXPECT_STREQ(to_string(Verdict::kHolds), "holds");
  EXPECT_STREQ(to_string(Verdict::kFails), "fails");
  EXPECT_TRUE(holds(Verdict::kHoldsUpToSampling));
  EXPECT_FALSE(holds(Verdict::kInconclusive));
}
