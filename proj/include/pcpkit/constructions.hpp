#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcpkit/rng.hpp"
#include "pcpkit/tensor.hpp"

namespace pcpkit {

/// Order-(k+1) tensor with A x^k = (Ax)^[k], k odd. Coefficients are the
/// exact multinomial expansion, stored on sorted index tuples.
Tensor matrix_power_tensor(const Matrix& a, int k);

/// Homogeneous map x -> |x|^{2r} (Ax)^[k] of degree 2r + k.
PolynomialMap theta_scaled_map(const Matrix& a, int k, int r);

/// f(x) = A x^{m-1} + diag(d) x with d = -A e^{m-1} - e, and q = e, so that
/// 0 and e both solve PCP(f, q). Requires order > 2.
PcpInstance remark5_instance(const Tensor& a);

/// x -> x^[k] as an order-(k+1) diagonal tensor.
Tensor diagonal_power_tensor(int n, int k);

Matrix example1_matrix();
Tensor example1_tensor();  // matrix_power_tensor(example1_matrix(), 3)

/// f(x) = |x|^2 A x - 2 sqrt(2) x with A the rotation by pi/2.
PolynomialMap example2_map();
Vector example2_q();  // (2, -2); any solution would satisfy |x| <= 1

/// F(x, y) = (x^2 - y^2 - (x-y)^2, x^2 - y^2 + 2(x-y)^2).
PolynomialMap example3_map();
Vector example3_q(int k);         // (-1, -1 - 3/(4k^2))
Vector example3_solution(int k);  // (k + 1/(2k), k)
Vector example3_limit_q();        // (-1, -1)

/// Order-3 tensor with A x^2 = (-x1 x2, -x1^2 + 2 x2^2); its remark5_instance
/// has exactly the two solutions 0 and e.
Tensor remark5_tensor();

Tensor strong_m_tensor();
Tensor strictly_copositive_tensor();
Tensor nonneg_pos_diag_tensor();

/// Strictly diagonally dominant with positive diagonal (a P-matrix).
Matrix random_r_matrix(Rng& rng, int n);

struct ExpectedProperty {
  std::string property;    // e.g. "degree", "r0", "solvable"
  std::string expected;    // e.g. "-1", "holds", "fails"
  std::string provenance;  // PAPER | DERIVED | TRIVIAL
  std::string citation;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::optional<Tensor> tensor;
  std::optional<PolynomialMap> map;  // set for non-homogeneous entries
  std::optional<Vector> q;
  std::vector<ExpectedProperty> expected;

  /// The entry's map: `map` if set, else the homogeneous map of `tensor`.
  PolynomialMap as_map() const;
};

std::vector<CatalogEntry> example_catalog();

/// Throws InvalidInput for an unknown name.
CatalogEntry catalog_entry(const std::string& name);

}  // namespace pcpkit
