#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2/FMA variant; the variant is picked
// once at startup from the CPU feature flags and can be overridden for
// equivalence testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace pcpkit::kernels {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  // sum_i a[i] * b[i]
  double (*dot)(std::span<const double> a, std::span<const double> b);
  // y += alpha * x
  void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);
  // out[i] = min(x[i], y[i])
  void (*min_map)(std::span<const double> x, std::span<const double> y,
                  std::span<double> out);
  // max_i |min(x[i], y[i])|
  double (*natural_residual_inf)(std::span<const double> x,
                                 std::span<const double> y);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool cpu_supports(Isa isa);

/// Active table; resolved on first use.
const KernelTable& active();
Isa active_isa();

/// Forces a variant. Throws InvalidInput if the CPU or build lacks it.
void select(Isa isa);
/// Restores the automatic choice.
void select_auto();

std::string_view to_string(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a, b);
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x, y);
}
inline double natural_residual_inf(std::span<const double> x,
                                   std::span<const double> y) {
  return active().natural_residual_inf(x, y);
}

}  // namespace pcpkit::kernels
