#include <gtest/gtest.h>

#include "pcpkit/constructions.hpp"
#include "pcpkit/degree.hpp"
#include "pcpkit/errors.hpp"
#include "test_util.hpp"

using namespace pcpkit;
using test::mat2;
using test::vec;

namespace {

PolynomialMap cube2() { return PolynomialMap::homogeneous(diagonal_power_tensor(2, 3)); }

int preimage_sum(const DegreeEstimate& d) {
  int s = 0;
  for (const Preimage& p : d.preimages) s += p.sign;
  return s;
}

}  // namespace

TEST(LocalDegree, Examples) {
  EXPECT_EQ(local_degree_min_map(PolynomialMap::identity(2)).value, 1);
  EXPECT_EQ(local_degree_min_map(PolynomialMap::identity(3)).value, 1);
  EXPECT_EQ(local_degree_min_map(PolynomialMap::homogeneous(example1_tensor())).value, -1);
  EXPECT_EQ(local_degree_min_map(cube2()).value, 1);
}

TEST(LocalDegree, EvidenceIsConsistent) {
  const DegreeEstimate d = local_degree_min_map(PolynomialMap::homogeneous(example1_tensor()));
  EXPECT_EQ(preimage_sum(d), d.value);
  EXPECT_GT(d.tie_margin, 0.0);
  EXPECT_EQ(d.method, DegreeMethod::kRegularValue);
}

TEST(LocalDegree, SeedIndependent) {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    DegreeOptions o;
    o.seed = s;
    EXPECT_EQ(local_degree_min_map(PolynomialMap::homogeneous(example1_tensor()), o).value, -1);
  }
}

TEST(LocalDegree, RejectsNonR0AndNonHomogeneous) {
  EXPECT_THROW(local_degree_min_map(example2_map().leading_term()), InvalidInput);
  EXPECT_THROW(local_degree_min_map(example2_map()), InvalidInput);
}

TEST(Winding, Examples) {
  EXPECT_EQ(winding_degree_2d(PolynomialMap::identity(2)), 1);
  EXPECT_EQ(winding_degree_2d(PolynomialMap::homogeneous(example1_tensor())), -1);
  EXPECT_EQ(winding_degree_2d(PolynomialMap::linear(mat2(2, 1, 0, 1))), 1);
  EXPECT_EQ(winding_degree_2d(theta_scaled_map(Matrix::Identity(2, 2), 1, 1)), 1);
}

TEST(Winding, RejectsOtherDimensions) {
  EXPECT_THROW(winding_degree_2d(PolynomialMap::identity(3)), InvalidInput);
}

TEST(TensorDegree, BothMethodsAgree) {
  const DegreeEstimate d = tensor_degree(example1_tensor());
  EXPECT_EQ(d.value, -1);
  ASSERT_TRUE(d.winding_value.has_value());
  EXPECT_EQ(*d.winding_value, -1);
  EXPECT_EQ(tensor_degree(diagonal_power_tensor(3, 3), DegreeMethod::kRegularValue).value, 1);
}

TEST(TensorDegree, RejectsNonR0) {
  Tensor t(3, 2);
  t({1, 1, 1}) = 1.0;  // e1 is a nonzero root of min{u, F(u)}
  EXPECT_THROW(tensor_degree(t), InvalidInput);
  EXPECT_THROW(tensor_degree(diagonal_power_tensor(3, 3), DegreeMethod::kWinding2d), InvalidInput);
}

TEST(MinMapDegree, NonHomogeneousWithQ) {
  // x + q with q < 0: one regular root at -q
  const DegreeEstimate d = min_map_degree(PolynomialMap::identity(2), vec({-1, -1}));
  EXPECT_EQ(d.value, 1);
  DegreeOptions fixed;
  fixed.fixed_radius = 0.5;
  EXPECT_EQ(min_map_degree(PolynomialMap::identity(2), vec({-1, -1}), fixed).value, 0);
}

TEST(Homotopy, LeadingTermPreservesDegree) {
  HomotopyRequest req;
  req.q = vec({-1, -1});
  const PolynomialMap f = PolynomialMap::homogeneous(example1_tensor()) +
                          PolynomialMap::linear(Matrix::Identity(2, 2));
  const HomotopyReport r = homotopy_invariance_check(f, req);
  EXPECT_TRUE(r.precondition_ok) << r.precondition_note;
  EXPECT_TRUE(r.bounded);
  EXPECT_TRUE(r.degrees_equal);
  ASSERT_TRUE(r.degree_start.has_value());
  EXPECT_EQ(*r.degree_start, -1);
  EXPECT_TRUE(r.pass);
}

TEST(Homotopy, KaramardianOnCopositiveMap) {
  HomotopyRequest req;
  req.mode = HomotopyMode::kKaramardian;
  req.d = vec({1, 1});
  const HomotopyReport r = homotopy_invariance_check(cube2(), req);
  EXPECT_TRUE(r.precondition_ok) << r.precondition_note;
  EXPECT_TRUE(r.end_degree_one);
  EXPECT_TRUE(r.pass);
}

TEST(Homotopy, PreconditionFailureIsReported) {
  HomotopyRequest req;
  req.q = vec({1, 1});
  const HomotopyReport r = homotopy_invariance_check(example2_map(), req);
  EXPECT_FALSE(r.precondition_ok);
  EXPECT_FALSE(r.pass);
}

TEST(Stability, SmallPerturbationsKeepDegree) {
  const StabilityReport s =
      stability_radius_probe(PolynomialMap::homogeneous(example1_tensor()), {1e-4, 1e-3}, 3);
  EXPECT_EQ(s.base_degree, -1);
  ASSERT_EQ(s.rows.size(), 2u);
  for (const StabilityRow& r : s.rows) EXPECT_TRUE(r.unchanged);
  EXPECT_DOUBLE_EQ(s.largest_stable_scale, 1e-3);
}
