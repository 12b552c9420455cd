#include <gtest/gtest.h>

#include <cmath>

#include "pcpkit/constructions.hpp"
#include "pcpkit/errors.hpp"
#include "pcpkit/rng.hpp"
#include "pcpkit/tensor.hpp"
#include "test_util.hpp"

using namespace pcpkit;
using test::dist;
using test::vec;

TEST(Tensor, RowMajorFirstIndexSlowest) {
  Tensor t(3, 2);
  t({0, 1, 1}) = 5.0;
  EXPECT_EQ(t.flat_index(std::vector<int>{0, 1, 1}), 3u);
  EXPECT_EQ(t.coeffs()[3], 5.0);
  EXPECT_EQ(t.multi_index(6), (std::vector<int>{1, 1, 0}));
}

TEST(Tensor, RejectsBadShapes) {
  EXPECT_THROW(Tensor(0, 2), InvalidInput);
  EXPECT_THROW(Tensor(2, 2, std::vector<double>(3, 1.0)), InvalidInput);
  EXPECT_THROW(Tensor(2, 1, std::vector<double>{std::nan("")}), InvalidInput);
}

TEST(Tensor, ApplyIdentity) {
  const Tensor id = Tensor::from_matrix(Matrix::Identity(2, 2));
  EXPECT_EQ(id.apply(vec({3, -1})), vec({3, -1}));
}

TEST(Tensor, ApplyExampleOneTensor) {
  EXPECT_LT(dist(example1_tensor().apply(vec({1, 0})), vec({-1, 27})), 1e-12);
}

TEST(Tensor, Homogeneity) {
  Rng rng(3);
  for (int m = 2; m <= 6; ++m) {
    std::vector<double> c(ipow(3, m));
    for (double& v : c) v = rng.uniform(-1, 1);
    const Tensor t(m, 3, c);
    const Vector x = rng.uniform_vector(3, -1, 1);
    const Vector a = t.apply(2.0 * x);
    const Vector b = std::pow(2.0, m - 1) * t.apply(x);
    EXPECT_LE(dist(a, b), 1e-12 * (1 + b.cwiseAbs().maxCoeff())) << "m = " << m;
  }
}

TEST(Tensor, MatrixRoundTrip) {
  const Matrix a = test::mat2(1, 2, 3, 4);
  EXPECT_EQ(Tensor::from_matrix(a).to_matrix(), a);
  EXPECT_THROW(Tensor(3, 2).to_matrix(), InvalidInput);
}

TEST(PolynomialMap, IdentityEvaluatesToX) {
  const PolynomialMap f = PolynomialMap::identity(3);
  const Vector x = vec({0.5, -2, 7});
  EXPECT_EQ(f.eval(x), x);
  EXPECT_EQ(f.jacobian(x), Matrix::Identity(3, 3));
}

TEST(PolynomialMap, ExampleTwoAndThreeValues) {
  const Vector v = example2_map().eval(vec({1, 0}));
  EXPECT_LT(dist(v, vec({-2 * std::sqrt(2.0), 1})), 1e-14);
  EXPECT_LT(dist(example3_map().eval(vec({1.5, 1})), vec({1, 1.75})), 1e-14);
}

TEST(PolynomialMap, InvariantsEnforced) {
  EXPECT_THROW(PolynomialMap(2, {}), InvalidInput);
  EXPECT_THROW(PolynomialMap(2, {Tensor(3, 2)}), InvalidInput);  // zero leading term
  EXPECT_THROW(PolynomialMap(2, {Tensor::from_vector(vec({1, 1}))}), InvalidInput);
  EXPECT_THROW(PolynomialMap(2, {Tensor::from_matrix(Matrix::Identity(3, 3))}), InvalidInput);
}

TEST(PolynomialMap, EqualOrderTermsAreSummed) {
  const Tensor a = Tensor::from_matrix(Matrix::Identity(2, 2));
  const PolynomialMap f(2, {a, a});
  EXPECT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.eval(vec({1, 2})), vec({2, 4}));
}

TEST(PolynomialMap, LeadingTerm) {
  const PolynomialMap h = PolynomialMap::homogeneous(example1_tensor());
  EXPECT_EQ(h.leading_term().eval(vec({1, 2})), h.eval(vec({1, 2})));

  const PolynomialMap f = example2_map();
  const PolynomialMap finf = f.leading_term();
  const Vector x = vec({0.3, -1.2});
  EXPECT_LT(dist(finf.eval(x), x.squaredNorm() * vec({-x[1], x[0]})), 1e-14);

  const Vector e = vec({1, 1});
  const double lam = 1e3;
  const Vector lim = f.eval(lam * e) / std::pow(lam, f.degree());
  EXPECT_LE((lim - finf.eval(e)).norm(), 1e-2 * finf.eval(e).norm() + 1e-6);
}

TEST(PolynomialMap, MinMap) {
  EXPECT_EQ(min_map(PolynomialMap::identity(2), vec({-1, 0}), vec({2, 1})), vec({1, 1}));
  EXPECT_LT(min_map(example3_map(), vec({-1, -1.75}), vec({1.5, 1})).cwiseAbs().maxCoeff(),
            1e-14);
}

TEST(PolynomialMap, MinRelation) {
  // zero min-map <=> complementarity, on exact values
  Rng rng(9);
  const double vals[] = {-1.0, 0.0, 0.0, 2.0};
  const PolynomialMap f = PolynomialMap::identity(2);
  for (int t = 0; t < 500; ++t) {
    const Vector x = vec({vals[static_cast<int>(rng.uniform() * 4)],
                          vals[static_cast<int>(rng.uniform() * 4)]});
    const Vector q = vec({vals[static_cast<int>(rng.uniform() * 4)],
                          vals[static_cast<int>(rng.uniform() * 4)]});
    const Vector y = f.eval(x) + q;
    const bool zero = min_map(f, q, x).isZero(0.0);
    const bool comp = (x.array() >= 0).all() && (y.array() >= 0).all() && x.dot(y) == 0.0;
    EXPECT_EQ(zero, comp);
  }
}

TEST(PolynomialMap, ComponentwisePowerAndRoot) {
  EXPECT_EQ(componentwise_power(vec({-2, 3}), 3), vec({-8, 27}));
  EXPECT_LT(dist(componentwise_root(vec({-8, 27}), 3), vec({-2, 3})), 1e-15);
  EXPECT_EQ(componentwise_power(vec({-2, 3}), 1), vec({-2, 3}));
  EXPECT_THROW(componentwise_power(vec({1}), 2), InvalidInput);
  EXPECT_THROW(componentwise_root(vec({1}), 0), InvalidInput);
}

TEST(PolynomialMap, JacobianOfCube) {
  const PolynomialMap f = PolynomialMap::homogeneous(diagonal_power_tensor(2, 3));
  const Matrix j = f.jacobian(vec({1, 2}));
  EXPECT_LT((j - Matrix(Eigen::Vector2d(3, 12).asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PolynomialMap, JacobianMatchesFiniteDifferences) {
  Rng rng(4);
  for (const PolynomialMap& f : {example2_map(), example3_map(), theta_scaled_map(example1_matrix(), 3, 1)}) {
    for (int t = 0; t < 100; ++t) {
      const Vector x = rng.uniform_vector(2, -1, 1);
      const Matrix j = f.jacobian(x);
      for (int c = 0; c < 2; ++c) {
        const Vector h = 1e-6 * Vector::Unit(2, c);
        const Vector fd = (f.eval(x + h) - f.eval(x - h)) / 2e-6;
        EXPECT_LE((fd - j.col(c)).cwiseAbs().maxCoeff(), 1e-5);
      }
    }
  }
}

TEST(PolynomialMap, NonSymmetricTensorJacobian) {
  // a[0,0,1] = 1 gives f_0 = x0 x1; J row 0 = (x1, x0)
  Tensor t(3, 2);
  t({0, 0, 1}) = 1.0;
  t({1, 1, 1}) = 1.0;
  const PolynomialMap f = PolynomialMap::homogeneous(t);
  const Matrix j = f.jacobian(vec({2, 3}));
  EXPECT_DOUBLE_EQ(j(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(j(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(j(1, 1), 6.0);
}
