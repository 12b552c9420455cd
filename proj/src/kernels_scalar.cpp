#include <algorithm>
#include <cmath>

#include "pcpkit/kernels.hpp"

namespace pcpkit::kernels {
namespace {

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void min_map_scalar(std::span<const double> x, std::span<const double> y,
                    std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(x[i], y[i]);
}

double natural_residual_inf_scalar(std::span<const double> x,
                                   std::span<const double> y) {
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    r = std::max(r, std::abs(std::min(x[i], y[i])));
  return r;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{dot_scalar, axpy_scalar, min_map_scalar,
                                 natural_residual_inf_scalar};
  return table;
}

}  // namespace pcpkit::kernels
