#include <gtest/gtest.h>

#include <cmath>

#include "pcpkit/constructions.hpp"
#include "pcpkit/errors.hpp"
#include "pcpkit/rng.hpp"
#include "test_util.hpp"

using namespace pcpkit;
using test::dist;
using test::vec;

TEST(MatrixPower, IdentityGivesDiagonalTensor) {
  const Tensor t = matrix_power_tensor(Matrix::Identity(2, 2), 3);
  const Tensor d = diagonal_power_tensor(2, 3);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_DOUBLE_EQ(t.coeffs()[i], d.coeffs()[i]);
}

TEST(MatrixPower, ExampleOneAtOnes) {
  EXPECT_LT(dist(example1_tensor().apply(vec({1, 1})), vec({0, 1})), 1e-14);
}

TEST(MatrixPower, KOneIsTheMatrix) {
  const Matrix a = example1_matrix();
  EXPECT_EQ(matrix_power_tensor(a, 1).to_matrix(), a);
}

TEST(MatrixPower, MatchesDefinitionOnRandomPoints) {
  Rng rng(8);
  for (int k : {3, 5}) {
    const Matrix a = rng.uniform_matrix(3, 3, -1, 1);
    const Tensor t = matrix_power_tensor(a, k);
    for (int s = 0; s < 20; ++s) {
      const Vector x = rng.uniform_vector(3, -1, 1);
      const Vector want = componentwise_power(a * x, k);
      EXPECT_LT(dist(t.apply(x), want), 1e-12);
    }
  }
}

TEST(MatrixPower, RejectsEvenK) {
  EXPECT_THROW(matrix_power_tensor(Matrix::Identity(2, 2), 2), InvalidInput);
}

TEST(ThetaScaled, Values) {
  const PolynomialMap f = theta_scaled_map(example1_matrix(), 3, 1);
  EXPECT_EQ(f.degree(), 5);
  const Vector x = vec({1, 2});
  EXPECT_LT(dist(f.eval(x), 5.0 * componentwise_power(example1_matrix() * x, 3)), 1e-12);
}

TEST(TwoSolutionInstance, ZeroAndOnesSolve) {
  const PcpInstance inst = remark5_instance(remark5_tensor());
  EXPECT_EQ(inst.q, vec({1, 1}));
  EXPECT_LT(min_map(inst.f, inst.q, vec({0, 0})).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(min_map(inst.f, inst.q, vec({1, 1})).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(remark5_instance(Tensor::from_matrix(Matrix::Identity(2, 2))), InvalidInput);
}

TEST(ExampleThree, SolutionsSolve) {
  for (int k = 1; k <= 5; ++k) {
    const Vector r = min_map(example3_map(), example3_q(k), example3_solution(k));
    EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-10 * k * k) << "k = " << k;
  }
}

TEST(RandomRMatrix, DiagonallyDominant) {
  Rng rng(2);
  const Matrix m = random_r_matrix(rng, 4);
  for (int i = 0; i < 4; ++i) {
    const double off = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
    EXPECT_GT(m(i, i), off);
  }
}

TEST(Catalog, EntriesAreWellFormed) {
  const std::vector<CatalogEntry> all = example_catalog();
  ASSERT_GE(all.size(), 7u);
  for (const CatalogEntry& c : all) {
    EXPECT_TRUE(c.tensor.has_value() || c.map.has_value()) << c.name;
    EXPECT_FALSE(c.expected.empty()) << c.name;
    for (const ExpectedProperty& p : c.expected)
      EXPECT_TRUE(p.provenance == "PAPER" || p.provenance == "DERIVED" || p.provenance == "TRIVIAL")
          << c.name << "/" << p.property;
    EXPECT_EQ(catalog_entry(c.name).name, c.name);
  }
  EXPECT_THROW(catalog_entry("no-such-entry"), InvalidInput);
}
