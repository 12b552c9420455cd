#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "pcpkit/errors.hpp"
#include "pcpkit/kernels.hpp"
#include "pcpkit/rng.hpp"

using namespace pcpkit;

namespace {

bool have_avx2() {
  return kernels::avx2_table() != nullptr && kernels::cpu_supports(kernels::Isa::kAvx2);
}

std::vector<double> draw(Rng& rng, int n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-5.0, 5.0);
  return v;
}

}  // namespace

TEST(Kernels, ScalarReference) {
  const kernels::KernelTable& s = kernels::scalar_table();
  std::vector<double> a{1, -2, 3}, b{4, 5, -6}, out(3);
  EXPECT_DOUBLE_EQ(s.dot(a, b), 4 - 10 - 18);
  s.min_map(a, b, out);
  EXPECT_EQ(out, (std::vector<double>{1, -2, -6}));
  EXPECT_DOUBLE_EQ(s.natural_residual_inf(a, b), 6.0);
  s.axpy(2.0, a, b);
  EXPECT_EQ(b, (std::vector<double>{6, 1, 0}));
  std::vector<double> empty;
  EXPECT_EQ(s.dot(empty, empty), 0.0);
  EXPECT_EQ(s.natural_residual_inf(empty, empty), 0.0);
}

TEST(Kernels, Avx2MatchesScalarOnAllTailLengths) {
  if (!have_avx2()) GTEST_SKIP() << "AVX2 variant not available on this machine";
  const kernels::KernelTable& s = kernels::scalar_table();
  const kernels::KernelTable& v = *kernels::avx2_table();
  Rng rng(5);
  for (int n = 0; n <= 67; ++n) {
    const std::vector<double> a = draw(rng, n), b = draw(rng, n);
    double mag = 0.0;
    for (int i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
    EXPECT_NEAR(s.dot(a, b), v.dot(a, b), 1e-13 * (1.0 + mag)) << "n = " << n;
    std::vector<double> o1(n), o2(n);
    s.min_map(a, b, o1);
    v.min_map(a, b, o2);
    EXPECT_EQ(o1, o2) << "n = " << n;
    EXPECT_EQ(s.natural_residual_inf(a, b), v.natural_residual_inf(a, b)) << "n = " << n;
    std::vector<double> y1 = b, y2 = b;
    s.axpy(-0.3, a, y1);
    v.axpy(-0.3, a, y2);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-14 * (1.0 + std::abs(y1[i])));
  }
}

TEST(Kernels, Avx2MinMapHandlesInfinities) {
  if (!have_avx2()) GTEST_SKIP() << "AVX2 variant not available on this machine";
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> a{0.0, -inf, 2.0, 1.0, 0.0}, b{1.0, 0.0, inf, -inf, 0.0};
  std::vector<double> o1(5), o2(5);
  kernels::scalar_table().min_map(a, b, o1);
  kernels::avx2_table()->min_map(a, b, o2);
  EXPECT_EQ(o1, o2);
}

TEST(Kernels, SelectAndRestore) {
  kernels::select(kernels::Isa::kScalar);
  EXPECT_EQ(kernels::active_isa(), kernels::Isa::kScalar);
  std::vector<double> a{1, 2}, b{3, 4};
  EXPECT_DOUBLE_EQ(kernels::dot(a, b), 11.0);
  if (have_avx2()) {
    kernels::select(kernels::Isa::kAvx2);
    EXPECT_EQ(kernels::active_isa(), kernels::Isa::kAvx2);
    EXPECT_DOUBLE_EQ(kernels::dot(a, b), 11.0);
  } else {
    EXPECT_THROW(kernels::select(kernels::Isa::kAvx2), InvalidInput);
  }
  kernels::select_auto();
  EXPECT_EQ(kernels::to_string(kernels::Isa::kScalar), "scalar");
}
