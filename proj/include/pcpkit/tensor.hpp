#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcpkit/config.hpp"

namespace pcpkit {

/// Dense tensor of order m and dimension n. Coefficients are stored
/// row-major with the first index slowest, and evaluation sums every index
/// tuple as written (no symmetrization).
///
/// Indices in this API are 0-based; the JSON format uses 1-based indices.
class Tensor {
 public:
  /// Zero tensor.
  Tensor(int order, int dim);
  Tensor(int order, int dim, std::vector<double> coeffs);

  static Tensor from_matrix(const Matrix& a);
  static Tensor from_vector(const Vector& v);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const double> coeffs() const { return coeffs_; }

  std::size_t flat_index(std::span<const int> idx) const;
  std::vector<int> multi_index(std::size_t flat) const;

  double operator()(std::span<const int> idx) const {
    return coeffs_[flat_index(idx)];
  }
  double& operator()(std::span<const int> idx) { return coeffs_[flat_index(idx)]; }
  double operator()(std::initializer_list<int> idx) const;
  double& operator()(std::initializer_list<int> idx);

  bool is_zero() const;
  double max_abs() const;

  /// x -> A x^{m-1}. For order 2 this is the matrix-vector product, for
  /// order 1 the stored constant vector.
  Vector apply(const Vector& x) const;

  /// Only valid for order 2.
  Matrix to_matrix() const;

  Tensor operator+(const Tensor& other) const;
  Tensor scaled(double s) const;

 private:
  int order_;
  int dim_;
  std::vector<double> coeffs_;
};

/// Free-function form of Tensor::apply with the dimension check.
Vector tensor_apply(const Tensor& a, const Vector& x);

/// Polynomial map f(x) = A_m x^{m-1} + ... + A_2 x with f(0) = 0.
/// Immutable; the derivative tensors used by jacobian() are precomputed.
class PolynomialMap {
 public:
  /// Terms may be given in any order; equal orders are summed. Throws
  /// InvalidInput on order-1 terms, mismatched dimensions, or a zero leading
  /// term.
  PolynomialMap(int dim, std::vector<Tensor> terms);

  static PolynomialMap identity(int dim);
  static PolynomialMap linear(const Matrix& a);
  static PolynomialMap homogeneous(Tensor t);

  int dim() const { return dim_; }
  /// m, the order of the leading tensor.
  int top_order() const { return terms_.back().order(); }
  /// m - 1.
  int degree() const { return top_order() - 1; }
  bool is_homogeneous() const { return terms_.size() == 1; }

  /// Sorted by increasing order.
  std::span<const Tensor> terms() const { return terms_; }
  const Tensor& leading_tensor() const { return terms_.back(); }

  Vector eval(const Vector& x) const;
  Matrix jacobian(const Vector& x) const;

  /// Map containing only the leading term.
  PolynomialMap leading_term() const;

  /// Sum of two maps of the same dimension.
  PolynomialMap operator+(const PolynomialMap& other) const;
  PolynomialMap scaled(double s) const;

 private:
  int dim_;
  std::vector<Tensor> terms_;
  // For each term of order k >= 2: order-k tensor D with
  // D[i][j][r] = sum over positions p of A[i][r with j inserted at p],
  // so that J(x)[i][j] = D[i][j] contracted with x^{k-2}.
  std::vector<Tensor> derivatives_;
};

Vector poly_eval(const PolynomialMap& f, const Vector& x);
PolynomialMap leading_term(const PolynomialMap& f);
Matrix jacobian(const PolynomialMap& f, const Vector& x);

/// PCP(f, q): find x >= 0 with f(x) + q >= 0 and <x, f(x) + q> = 0.
struct PcpInstance {
  PcpInstance(PolynomialMap f_in, Vector q_in);

  PolynomialMap f;
  Vector q;

  int dim() const { return f.dim(); }
};

/// min{x, f(x) + q}, componentwise.
Vector min_map(const PolynomialMap& f, const Vector& q, const Vector& x);

/// y^[k] for odd k >= 1.
Vector componentwise_power(const Vector& y, int k);
/// Sign-preserving real k-th root, inverse of componentwise_power.
Vector componentwise_root(const Vector& y, int k);

/// Contracts the trailing `depth` indices of a row-major coefficient block
/// with x. `coeffs` has `leading * n^depth` entries; the result has
/// `leading` entries.
std::vector<double> contract_trailing(std::span<const double> coeffs, int n,
                                      std::size_t leading, int depth,
                                      const Vector& x);

/// n^k as size_t; throws InvalidInput when it would overflow a sane bound.
std::size_t ipow(int n, int k);

}  // namespace pcpkit
