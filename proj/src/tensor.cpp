#include "pcpkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pcpkit/errors.hpp"
#include "pcpkit/kernels.hpp"

namespace pcpkit {

namespace {

constexpr std::size_t kMaxEntries = std::size_t{1} << 26;

void check_dim(int expected, Eigen::Index got, const char* what) {
  if (got != expected)
    throw InvalidInput(std::string(what) + ": dimension mismatch (expected " +
                       std::to_string(expected) + ", got " +
                       std::to_string(got) + ")");
}

Tensor derivative_tensor(const Tensor& a) {
  const int k = a.order();
  const int n = a.dim();
  Tensor d(k, n);
  if (k < 2) return d;
  std::vector<int> idx(k);
  std::vector<int> out(k);
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    const double v = a.coeffs()[flat];
    if (v == 0.0) continue;
    idx = a.multi_index(flat);
    // tail positions 1..k-1; drop position p, put its index second
    for (int p = 1; p < k; ++p) {
      out[0] = idx[0];
      out[1] = idx[p];
      int w = 2;
      for (int s = 1; s < k; ++s)
        if (s != p) out[w++] = idx[s];
      d(out) += v;
    }
  }
  return d;
}

}  // namespace

std::size_t ipow(int n, int k) {
  if (n < 1 || k < 0) throw InvalidInput("ipow: bad arguments");
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) {
    r *= static_cast<std::size_t>(n);
    if (r > kMaxEntries)
      throw InvalidInput("tensor too large: " + std::to_string(n) + "^" +
                         std::to_string(k) + " entries");
  }
  return r;
}

Tensor::Tensor(int order, int dim) : order_(order), dim_(dim) {
  if (order < 1 || dim < 1)
    throw InvalidInput("tensor order and dimension must be >= 1");
  coeffs_.assign(ipow(dim, order), 0.0);
}

Tensor::Tensor(int order, int dim, std::vector<double> coeffs)
    : order_(order), dim_(dim), coeffs_(std::move(coeffs)) {
  if (order < 1 || dim < 1)
    throw InvalidInput("tensor order and dimension must be >= 1");
  if (coeffs_.size() != ipow(dim, order))
    throw InvalidInput("tensor coefficient count " +
                       std::to_string(coeffs_.size()) + " != n^m = " +
                       std::to_string(ipow(dim, order)));
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw InvalidInput("tensor coefficient is not finite");
}

Tensor Tensor::from_matrix(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InvalidInput("matrix must be square and nonempty");
  const int n = static_cast<int>(a.rows());
  std::vector<double> c(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(i) * n + j] = a(i, j);
  return Tensor(2, n, std::move(c));
}

Tensor Tensor::from_vector(const Vector& v) {
  return Tensor(1, static_cast<int>(v.size()),
                std::vector<double>(v.data(), v.data() + v.size()));
}

std::size_t Tensor::flat_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != order_)
    throw InvalidInput("index tuple length " + std::to_string(idx.size()) +
                       " != tensor order " + std::to_string(order_));
  std::size_t flat = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_)
      throw InvalidInput("tensor index " + std::to_string(i) + " out of range");
    flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return flat;
}

std::vector<int> Tensor::multi_index(std::size_t flat) const {
  std::vector<int> idx(order_);
  for (int p = order_ - 1; p >= 0; --p) {
    idx[p] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
    flat /= static_cast<std::size_t>(dim_);
  }
  return idx;
}

double Tensor::operator()(std::initializer_list<int> idx) const {
  return coeffs_[flat_index(std::span<const int>(idx.begin(), idx.size()))];
}

double& Tensor::operator()(std::initializer_list<int> idx) {
  return coeffs_[flat_index(std::span<const int>(idx.begin(), idx.size()))];
}

bool Tensor::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](double c) { return c == 0.0; });
}

double Tensor::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::vector<double> contract_trailing(std::span<const double> coeffs, int n,
                                      std::size_t leading, int depth,
                                      const Vector& x) {
  std::size_t block = ipow(n, depth);
  if (coeffs.size() != leading * block)
    throw InvalidInput("contract_trailing: coefficient block size mismatch");
  if (depth == 0) return {coeffs.begin(), coeffs.end()};

  std::vector<double> cur;
  std::vector<double> next;
  std::span<const double> src = coeffs;
  for (int step = 0; step < depth; ++step) {
    const std::size_t inner = block / static_cast<std::size_t>(n);
    next.assign(leading * inner, 0.0);
    for (std::size_t l = 0; l < leading; ++l) {
      std::span<double> dst(next.data() + l * inner, inner);
      if (inner == 1) {
        dst[0] = kernels::dot(src.subspan(l * block, block),
                              std::span<const double>(x.data(), block));
        continue;
      }
      for (int j = 0; j < n; ++j) {
        if (x[j] == 0.0) continue;
        kernels::axpy(x[j], src.subspan(l * block + j * inner, inner), dst);
      }
    }
    cur.swap(next);
    src = cur;
    block = inner;
  }
  return cur;
}

Vector Tensor::apply(const Vector& x) const {
  check_dim(dim_, x.size(), "tensor_apply");
  if (order_ == 1) return Eigen::Map<const Vector>(coeffs_.data(), dim_);
  const std::vector<double> r =
      contract_trailing(coeffs_, dim_, static_cast<std::size_t>(dim_), order_ - 1, x);
  return Eigen::Map<const Vector>(r.data(), dim_);
}

Matrix Tensor::to_matrix() const {
  if (order_ != 2) throw InvalidInput("to_matrix requires an order-2 tensor");
  Matrix a(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      a(i, j) = coeffs_[static_cast<std::size_t>(i) * dim_ + j];
  return a;
}

Tensor Tensor::operator+(const Tensor& other) const {
  if (other.order_ != order_ || other.dim_ != dim_)
    throw InvalidInput("tensor sum: shape mismatch");
  std::vector<double> c(coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coeffs_[i];
  return Tensor(order_, dim_, std::move(c));
}

Tensor Tensor::scaled(double s) const {
  std::vector<double> c(coeffs_);
  for (double& v : c) v *= s;
  return Tensor(order_, dim_, std::move(c));
}

Vector tensor_apply(const Tensor& a, const Vector& x) { return a.apply(x); }

PolynomialMap::PolynomialMap(int dim, std::vector<Tensor> terms) : dim_(dim) {
  if (dim < 1) throw InvalidInput("polynomial map dimension must be >= 1");
  if (terms.empty()) throw InvalidInput("polynomial map needs at least one term");
  std::sort(terms.begin(), terms.end(),
            [](const Tensor& a, const Tensor& b) { return a.order() < b.order(); });
  for (Tensor& t : terms) {
    if (t.dim() != dim)
      throw InvalidInput("term of order " + std::to_string(t.order()) +
                         " has dimension " + std::to_string(t.dim()) +
                         ", map has " + std::to_string(dim));
    if (t.order() < 2)
      throw InvalidInput(
          "order-1 (constant) terms are not stored; fold them into q");
    if (!terms_.empty() && terms_.back().order() == t.order())
      terms_.back() = terms_.back() + t;
    else
      terms_.push_back(std::move(t));
  }
  if (terms_.back().is_zero())
    throw InvalidInput("leading term of order " +
                       std::to_string(terms_.back().order()) + " is zero");
  derivatives_.reserve(terms_.size());
  for (const Tensor& t : terms_) derivatives_.push_back(derivative_tensor(t));
}

PolynomialMap PolynomialMap::identity(int dim) {
  return linear(Matrix::Identity(dim, dim));
}

PolynomialMap PolynomialMap::linear(const Matrix& a) {
  return PolynomialMap(static_cast<int>(a.rows()), {Tensor::from_matrix(a)});
}

PolynomialMap PolynomialMap::homogeneous(Tensor t) {
  const int n = t.dim();
  return PolynomialMap(n, {std::move(t)});
}

Vector PolynomialMap::eval(const Vector& x) const {
  check_dim(dim_, x.size(), "poly_eval");
  Vector y = Vector::Zero(dim_);
  for (const Tensor& t : terms_) y += t.apply(x);
  return y;
}

Matrix PolynomialMap::jacobian(const Vector& x) const {
  check_dim(dim_, x.size(), "jacobian");
  Matrix j = Matrix::Zero(dim_, dim_);
  const std::size_t lead = static_cast<std::size_t>(dim_) * dim_;
  for (const Tensor& d : derivatives_) {
    const std::vector<double> r =
        contract_trailing(d.coeffs(), dim_, lead, d.order() - 2, x);
    j += Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(r.data(), dim_, dim_);
  }
  return j;
}

PolynomialMap PolynomialMap::leading_term() const {
  return PolynomialMap(dim_, {terms_.back()});
}

PolynomialMap PolynomialMap::operator+(const PolynomialMap& other) const {
  std::vector<Tensor> all(terms_.begin(), terms_.end());
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return PolynomialMap(dim_, std::move(all));
}

PolynomialMap PolynomialMap::scaled(double s) const {
  std::vector<Tensor> all;
  for (const Tensor& t : terms_) all.push_back(t.scaled(s));
  return PolynomialMap(dim_, std::move(all));
}

Vector poly_eval(const PolynomialMap& f, const Vector& x) { return f.eval(x); }
PolynomialMap leading_term(const PolynomialMap& f) { return f.leading_term(); }
Matrix jacobian(const PolynomialMap& f, const Vector& x) { return f.jacobian(x); }

PcpInstance::PcpInstance(PolynomialMap f_in, Vector q_in)
    : f(std::move(f_in)), q(std::move(q_in)) {
  check_dim(f.dim(), q.size(), "PCP instance q");
  if (!q.allFinite()) throw InvalidInput("q has non-finite entries");
}

Vector min_map(const PolynomialMap& f, const Vector& q, const Vector& x) {
  check_dim(f.dim(), q.size(), "min_map q");
  const Vector y = f.eval(x) + q;
  Vector out(x.size());
  kernels::active().min_map(std::span<const double>(x.data(), x.size()),
                            std::span<const double>(y.data(), y.size()),
                            std::span<double>(out.data(), out.size()));
  return out;
}

namespace {
void check_odd(int k) {
  if (k < 1 || k % 2 == 0)
    throw InvalidInput("componentwise power/root needs an odd k >= 1, got " +
                       std::to_string(k));
}
}  // namespace

Vector componentwise_power(const Vector& y, int k) {
  check_odd(k);
  Vector r(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    double p = 1.0;
    for (int e = 0; e < k; ++e) p *= y[i];
    r[i] = p;
  }
  return r;
}

Vector componentwise_root(const Vector& y, int k) {
  check_odd(k);
  Vector r(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (k == 1)
      r[i] = y[i];
    else if (k == 3)
      r[i] = std::cbrt(y[i]);
    else
      r[i] = std::copysign(std::pow(std::abs(y[i]), 1.0 / k), y[i]);
  }
  return r;
}

}  // namespace pcpkit
