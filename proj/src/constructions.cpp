#include "pcpkit/constructions.hpp"

#include <cmath>
#include <cstdint>
#include <functional>

#include "pcpkit/errors.hpp"

namespace pcpkit {

namespace {

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

void require_odd(int k, const char* where) {
  if (k < 1 || k % 2 == 0) throw InvalidInput(std::string(where) + ": k must be odd and >= 1");
}

}  // namespace

Tensor matrix_power_tensor(const Matrix& a, int k) {
  require_odd(k, "matrix_power_tensor");
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InvalidInput("matrix_power_tensor: matrix must be square");
  if (k > 19) throw InvalidInput("matrix_power_tensor: k too large");
  const int n = static_cast<int>(a.rows());
  Tensor t(k + 1, n);
  const std::uint64_t kf = factorial(k);

  // Each multiset of column indices j1 <= ... <= jk with counts c gets the
  // integer multinomial k! / prod c_j! times prod A_ij^{c_j}.
  std::vector<int> idx(k + 1);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == k + 1) {
      std::vector<int> counts(n, 0);
      for (int p = 1; p <= k; ++p) ++counts[idx[p]];
      std::uint64_t denom = 1;
      for (int c : counts) denom *= factorial(c);
      const std::uint64_t multinomial = kf / denom;
      const int i = idx[0];
      double prod = 1.0;
      for (int j = 0; j < n; ++j)
        for (int c = 0; c < counts[j]; ++c) prod *= a(i, j);
      t(std::span<const int>(idx)) = static_cast<double>(multinomial) * prod;
      return;
    }
    for (int j = start; j < n; ++j) {
      idx[pos] = j;
      rec(pos + 1, j);
    }
  };
  for (int i = 0; i < n; ++i) {
    idx[0] = i;
    rec(1, 0);
  }
  return t;
}

PolynomialMap theta_scaled_map(const Matrix& a, int k, int r) {
  require_odd(k, "theta_scaled_map");
  if (r < 1) throw InvalidInput("theta_scaled_map: r must be >= 1");
  const Tensor base = matrix_power_tensor(a, k);
  const int n = base.dim();
  const int order = k + 1 + 2 * r;
  Tensor b(order, n);
  // |x|^{2r} = (sum_s x_s^2)^r expands over r-tuples (s1..sr), each
  // contributing x_{s1}^2 ... x_{sr}^2.
  std::vector<int> idx(order);
  const auto c = base.coeffs();
  for (std::size_t f = 0; f < c.size(); ++f) {
    if (c[f] == 0.0) continue;
    const std::vector<int> head = base.multi_index(f);
    std::copy(head.begin(), head.end(), idx.begin());
    std::vector<int> s(r, 0);
    while (true) {
      for (int p = 0; p < r; ++p) {
        idx[k + 1 + 2 * p] = s[p];
        idx[k + 2 + 2 * p] = s[p];
      }
      b(std::span<const int>(idx)) += c[f];
      int p = r - 1;
      while (p >= 0 && ++s[p] == n) s[p--] = 0;
      if (p < 0) break;
    }
  }
  return PolynomialMap::homogeneous(std::move(b));
}

PcpInstance remark5_instance(const Tensor& a) {
  if (a.order() <= 2) throw InvalidInput("remark5_instance: order must exceed 2");
  const int n = a.dim();
  const Vector e = Vector::Ones(n);
  const Vector d = -a.apply(e) - e;
  Matrix D = d.asDiagonal();
  return PcpInstance(PolynomialMap(n, {a, Tensor::from_matrix(D)}), e);
}

Tensor diagonal_power_tensor(int n, int k) {
  if (n < 1 || k < 1) throw InvalidInput("diagonal_power_tensor: n, k must be positive");
  Tensor t(k + 1, n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> idx(k + 1, i);
    t(std::span<const int>(idx)) = 1.0;
  }
  return t;
}

Matrix example1_matrix() {
  Matrix a(2, 2);
  a << -1, 1, 3, -2;
  return a;
}

Tensor example1_tensor() { return matrix_power_tensor(example1_matrix(), 3); }

PolynomialMap example2_map() {
  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  const PolynomialMap lead = theta_scaled_map(rot, 1, 1);
  return lead + PolynomialMap::linear(-2.0 * std::sqrt(2.0) * Matrix::Identity(2, 2));
}

Vector example2_q() { return vec2(2.0, -2.0); }

PolynomialMap example3_map() {
  Tensor t(3, 2);
  t({0, 0, 1}) = 2.0;
  t({0, 1, 1}) = -2.0;
  t({1, 0, 0}) = 3.0;
  t({1, 0, 1}) = -4.0;
  t({1, 1, 1}) = 1.0;
  return PolynomialMap::homogeneous(std::move(t));
}

Vector example3_q(int k) {
  if (k < 1) throw InvalidInput("example3_q: k must be >= 1");
  return vec2(-1.0, -1.0 - 3.0 / (4.0 * k * k));
}

Vector example3_solution(int k) {
  if (k < 1) throw InvalidInput("example3_solution: k must be >= 1");
  return vec2(k + 1.0 / (2.0 * k), k);
}

Vector example3_limit_q() { return vec2(-1.0, -1.0); }

Tensor remark5_tensor() {
  Tensor t(3, 2);
  t({0, 0, 1}) = -1.0;
  t({1, 0, 0}) = -1.0;
  t({1, 1, 1}) = 2.0;
  return t;
}

Tensor strong_m_tensor() {
  Tensor t(3, 2);
  t({0, 0, 0}) = 3.0;
  t({0, 0, 1}) = -1.0;
  t({0, 1, 1}) = -0.5;
  t({1, 1, 1}) = 3.0;
  t({1, 0, 1}) = -1.0;
  t({1, 0, 0}) = -0.5;
  return t;
}

Tensor strictly_copositive_tensor() {
  Tensor t = diagonal_power_tensor(2, 3);
  t({0, 1, 1, 1}) = -1.0;
  t({1, 0, 0, 0}) = 1.0;
  return t;
}

Tensor nonneg_pos_diag_tensor() {
  Tensor t(3, 3);
  for (int i = 0; i < 3; ++i) t({i, i, i}) = 1.0 + i;
  t({0, 1, 2}) = 0.5;
  t({1, 0, 0}) = 0.25;
  t({2, 1, 1}) = 1.0;
  return t;
}

Matrix random_r_matrix(Rng& rng, int n) {
  Matrix a = rng.uniform_matrix(n, n, -1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) off += std::abs(a(i, j));
    a(i, i) = off + rng.uniform(0.5, 1.5);
  }
  return a;
}

PolynomialMap CatalogEntry::as_map() const {
  if (map) return *map;
  if (tensor) return PolynomialMap::homogeneous(*tensor);
  throw InvalidInput("catalog entry " + name + " has neither map nor tensor");
}

std::vector<CatalogEntry> example_catalog() {
  std::vector<CatalogEntry> out;
  const std::string ex1 = "Example 1";
  const std::string cor = "Corollary: the degree of an R-tensor is one";

  {
    CatalogEntry c;
    c.name = "example1";
    c.description = "(Ax)^[3] with A = [[-1,1],[3,-2]], an N-matrix of the first category";
    c.tensor = example1_tensor();
    c.expected = {
        {"degree", "-1", "PAPER", ex1 + ", \"R0-matrix with degree -1\""},
        {"r0", "holds", "PAPER", ex1 + ", \"R0-tensor\""},
        {"r", "fails", "PAPER", ex1 + ", \"cannot be an R-tensor\""},
        {"strong-q", "holds", "PAPER", ex1 + ", \"has the strong Q-property\""},
        {"z", "fails", "DERIVED", "expansion of (-x1+x2)^3 has +x2^3 in component 1"},
        {"gus", "fails", "DERIVED", "N-matrix LCP with small q > 0 has two solutions"},
    };
    out.push_back(std::move(c));
  }
  {
    CatalogEntry c;
    c.name = "example2";
    c.description = "f(x) = |x|^2 A x - 2 sqrt(2) x, A = [[0,-1],[1,0]], q = (2,-2)";
    c.map = example2_map();
    c.q = example2_q();
    c.expected = {
        {"solvable", "fails", "PAPER", "Example 2, \"PCP(f,q) has no solution\""},
        {"copositive-f-inf", "holds", "PAPER", "Example 2, \"<x, f_inf(x)> = 0 for all x\""},
        {"r0-f-inf", "fails", "PAPER", "Example 2, \"S is the nonnegative real-axis\""},
        {"dual-interior", "interior", "PAPER", "Example 2, \"q in int(S*)\""},
        {"p", "fails", "DERIVED", "a P map would make PCP(f,q) uniquely solvable"},
    };
    out.push_back(std::move(c));
  }
  {
    CatalogEntry c;
    c.name = "example3";
    c.description = "F(x,y) = (x^2-y^2-(x-y)^2, x^2-y^2+2(x-y)^2); q_k -> (-1,-1)";
    c.map = example3_map();
    c.q = example3_limit_q();
    c.expected = {
        {"solvable-q_k", "holds", "PAPER", "Example 3, \"(k+1/2k, k) in SOL(F,q_k)\""},
        {"solvable", "fails", "PAPER", "Example 3, \"set of all solvable qs is not closed\""},
    };
    out.push_back(std::move(c));
  }
  {
    CatalogEntry c;
    c.name = "diag3";
    c.description = "x^[3], n = 2";
    c.tensor = diagonal_power_tensor(2, 3);
    c.expected = {
        {"r0", "holds", "TRIVIAL", "min{u, u^[3]} = 0 forces u = 0"},
        {"r", "holds", "TRIVIAL", "d = e"},
        {"z", "holds", "TRIVIAL", "diagonal tensor"},
        {"strong-m", "holds", "TRIVIAL", "A e^{m-1} = e > 0"},
        {"gus", "holds", "PAPER", "P-matrix based tensor has the GUS-property"},
        {"degree", "1", "DERIVED", cor},
    };
    out.push_back(std::move(c));
  }
  {
    CatalogEntry c;
    c.name = "nonneg-pos-diag";
    c.description = "order 3, n = 3, nonnegative with positive diagonal";
    c.tensor = nonneg_pos_diag_tensor();
    c.expected = {
        {"nonneg-pos-diag", "holds", "TRIVIAL", "coefficient scan"},
        {"copositive", "holds", "TRIVIAL", "all summands nonnegative on x >= 0"},
        {"r", "holds", "DERIVED", "Remark 4(a) class"},
        {"degree", "1", "DERIVED", cor},
    };
    out.push_back(std::move(c));
  }
  {
    CatalogEntry c;
    c.name = "strong-m";
    c.description = "order 3, n = 2 Z-tensor with A e^2 > 0";
    c.tensor = strong_m_tensor();
    c.expected = {
        {"z", "holds", "TRIVIAL", "coefficient scan"},
        {"strong-m", "holds", "DERIVED", "A e^2 = (1.5, 1.5) > 0"},
        {"r", "holds", "DERIVED", "Remark 4(d) class"},
        {"degree", "1", "DERIVED", cor},
    };
    out.push_back(std::move(c));
  }
  {
    CatalogEntry c;
    c.name = "strictly-copositive";
    c.description = "x^[3] plus a[1,2,2,2] = -1 and a[2,1,1,1] = +1";
    c.tensor = strictly_copositive_tensor();
    c.expected = {
        {"strictly-copositive", "holds", "DERIVED", "t^4+(1-t)^4-t(1-t)^3+(1-t)t^3 > 0 on [0,1]"},
        {"r", "holds", "DERIVED", "strictly copositive tensors are R"},
        {"degree", "1", "DERIVED", cor},
    };
    out.push_back(std::move(c));
  }
  {
    CatalogEntry c;
    c.name = "r-matrix-power";
    c.description = "(Ax)^[3] with the P-matrix A = [[2,1],[0,1]]";
    Matrix a(2, 2);
    a << 2, 1, 0, 1;
    c.tensor = matrix_power_tensor(a, 3);
    c.expected = {
        {"r", "holds", "DERIVED", "R-matrix induces an R-tensor"},
        {"gus", "holds", "PAPER", "P-matrix based tensor has the GUS-property"},
        {"degree", "1", "DERIVED", cor},
    };
    out.push_back(std::move(c));
  }
  {
    CatalogEntry c;
    c.name = "theta-example1";
    c.description = "|x|^2 (Ax)^[3] with the Example 1 matrix";
    c.tensor = theta_scaled_map(example1_matrix(), 3, 1).leading_tensor();
    c.expected = {
        {"r0", "holds", "PAPER", "Remark 3"},
        {"degree", "-1", "PAPER", "Remark 3, \"deg(B)=deg(A)=deg(A) != 0\""},
    };
    out.push_back(std::move(c));
  }
  {
    CatalogEntry c;
    c.name = "remark5";
    c.description = "A x^2 = (-x1 x2, -x1^2 + 2 x2^2), f = A x^2 + diag(d) x, q = e";
    const PcpInstance inst = remark5_instance(remark5_tensor());
    c.map = inst.f;
    c.q = inst.q;
    c.expected = {
        {"solutions", "{0, e}", "PAPER", "Remark 5, \"0 and e are two solutions of PCP(f,e)\""},
        {"gus", "fails", "PAPER", "Remark 5"},
    };
    out.push_back(std::move(c));
  }
  return out;
}

CatalogEntry catalog_entry(const std::string& name) {
  for (CatalogEntry& c : example_catalog())
    if (c.name == name) return c;
  throw InvalidInput("unknown catalog entry: " + name);
}

}  // namespace pcpkit
