#include "pcpkit/lcp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pcpkit/errors.hpp"
#include "pcpkit/newton.hpp"
#include "pcpkit/rng.hpp"

namespace pcpkit {

LcpInstance::LcpInstance(Matrix m, Vector q_in) : M(std::move(m)), q(std::move(q_in)) {
  if (M.rows() != M.cols() || M.rows() != q.size() || q.size() == 0)
    throw InvalidInput("LCP: M must be n x n and q of length n");
  if (!M.allFinite() || !q.allFinite()) throw InvalidInput("LCP: non-finite entries");
}

const char* to_string(LcpStatus s) {
  switch (s) {
    case LcpStatus::kSolved:
      return "solved";
    case LcpStatus::kRayTermination:
      return "ray-termination";
    case LcpStatus::kInfeasiblePatternExhausted:
      return "infeasible-pattern-exhausted";
  }
  return "?";
}

double lcp_violation(const LcpInstance& inst, const Vector& x) {
  const Vector w = inst.M * x + inst.q;
  double v = 0.0;
  for (int i = 0; i < inst.dim(); ++i) {
    v = std::max(v, -x[i]);
    v = std::max(v, -w[i]);
    v = std::max(v, std::abs(x[i] * w[i]));
  }
  return v;
}

namespace {

constexpr double kPivotEps = 1e-12;

void pivot(Matrix& t, int row, int col) {
  t.row(row) /= t(row, col);
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    if (i != row && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(row);
}

// Lexicographic minimum of rows [rhs, B^{-1}] / d over the candidate rows.
// Columns 0..n-1 of the tableau hold B^{-1}; the last column is rhs.
int lex_min_row(const Matrix& t, int col, const std::vector<int>& cand, int n) {
  const int rhs = static_cast<int>(t.cols()) - 1;
  int best = cand.front();
  for (std::size_t c = 1; c < cand.size(); ++c) {
    const int r = cand[c];
    // compare row r vs best: key(rhs first, then B^{-1} columns)
    for (int k = -1; k < n; ++k) {
      const int kc = k < 0 ? rhs : k;
      const double a = t(r, kc) / t(r, col);
      const double b = t(best, kc) / t(best, col);
      const double scale = 1.0 + std::max(std::abs(a), std::abs(b));
      if (a < b - 1e-12 * scale) {
        best = r;
        break;
      }
      if (a > b + 1e-12 * scale) break;
    }
  }
  return best;
}

}  // namespace

LcpResult lemke_solve(const LcpInstance& inst, int max_pivots) {
  const int n = inst.dim();
  if (n > 50) throw InvalidInput("lemke_solve: n > 50");
  if (max_pivots <= 0) max_pivots = 200 + 20 * n * n;

  LcpResult res;
  if ((inst.q.array() >= 0.0).all()) {
    res.status = LcpStatus::kSolved;
    res.solutions.push_back(Vector::Zero(n));
    return res;
  }

  // columns: w (0..n-1), z (n..2n-1), z0 (2n), rhs (2n+1)
  const int z0 = 2 * n;
  const int rhs = 2 * n + 1;
  Matrix t = Matrix::Zero(n, 2 * n + 2);
  t.leftCols(n).setIdentity();
  t.middleCols(n, n) = -inst.M;
  t.col(z0).setConstant(-1.0);
  t.col(rhs) = inst.q;
  std::vector<int> basis(n);
  for (int i = 0; i < n; ++i) basis[i] = i;

  // First pivot: most negative q, ties to the largest index keep the
  // tableau lexicographically positive.
  int row = 0;
  for (int i = 1; i < n; ++i)
    if (inst.q[i] <= inst.q[row]) row = i;
  int entering = z0;

  while (true) {
    if (res.work >= max_pivots)
      throw BudgetExhausted("lemke_solve: pivot budget of " +
                            std::to_string(max_pivots) + " exhausted");
    const int leaving = basis[row];
    pivot(t, row, entering);
    basis[row] = entering;
    ++res.work;
    if (leaving == z0) break;

    entering = leaving < n ? leaving + n : leaving - n;
    std::vector<int> cand;
    for (int i = 0; i < n; ++i)
      if (t(i, entering) > kPivotEps) cand.push_back(i);
    if (cand.empty()) {
      res.status = LcpStatus::kRayTermination;
      return res;
    }
    // z0 leaves whenever it ties for the minimum ratio
    double theta = std::numeric_limits<double>::infinity();
    for (int i : cand) theta = std::min(theta, t(i, rhs) / t(i, entering));
    row = -1;
    for (int i : cand)
      if (basis[i] == z0 && t(i, rhs) / t(i, entering) <= theta + 1e-12 * (1.0 + std::abs(theta)))
        row = i;
    if (row < 0) row = lex_min_row(t, entering, cand, n);
  }

  Vector z = Vector::Zero(n);
  for (int i = 0; i < n; ++i)
    if (basis[i] >= n && basis[i] < 2 * n) z[basis[i] - n] = std::max(0.0, t(i, rhs));
  res.status = LcpStatus::kSolved;
  res.solutions.push_back(z);
  return res;
}

namespace {

struct PatternSystem {
  Matrix a;  // |alpha| x |alpha|
  Vector b;
  std::vector<int> idx;
};

PatternSystem support_system(const LcpInstance& inst, unsigned mask) {
  PatternSystem s;
  for (int i = 0; i < inst.dim(); ++i)
    if (mask & (1u << i)) s.idx.push_back(i);
  const int k = static_cast<int>(s.idx.size());
  s.a.resize(k, k);
  s.b.resize(k);
  for (int r = 0; r < k; ++r) {
    s.b[r] = -inst.q[s.idx[r]];
    for (int c = 0; c < k; ++c) s.a(r, c) = inst.M(s.idx[r], s.idx[c]);
  }
  return s;
}

Vector scatter(const PatternSystem& s, const Vector& xa, int n) {
  Vector x = Vector::Zero(n);
  for (std::size_t r = 0; r < s.idx.size(); ++r) x[s.idx[r]] = xa[r];
  return x;
}

bool signs_ok(const LcpInstance& inst, const Vector& x, double tol) {
  const Vector w = inst.M * x + inst.q;
  return (x.array() >= -tol).all() && (w.array() >= -tol).all();
}

}  // namespace

LcpResult lcp_enumerate(const LcpInstance& inst, const Tolerances& tol) {
  const int n = inst.dim();
  if (n > 12) throw InvalidInput("lcp_enumerate: n > 12");
  LcpResult res;
  const double scale = 1.0 + inst.q.cwiseAbs().maxCoeff();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    ++res.work;
    const PatternSystem s = support_system(inst, mask);
    const int k = static_cast<int>(s.idx.size());
    if (k == 0) {
      const Vector x = Vector::Zero(n);
      if (signs_ok(inst, x, tol.feasibility)) insert_unique(res.solutions, x, tol.feasibility);
      continue;
    }
    Eigen::PartialPivLU<Matrix> lu(s.a);
    const double det = lu.determinant();
    if (std::abs(det) >= tol.singular_det) {
      const Vector x = scatter(s, lu.solve(s.b), n);
      if (signs_ok(inst, x, tol.feasibility)) insert_unique(res.solutions, x, tol.feasibility);
      continue;
    }

    SingularPattern sp;
    sp.support = mask;
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(s.a);
    const Vector xp = cod.solve(s.b);
    sp.consistent = (s.a * xp - s.b).cwiseAbs().maxCoeff() <= 1e-9 * scale;
    if (sp.consistent) {
      Eigen::FullPivLU<Matrix> flu(s.a);
      flu.setThreshold(1e-10);
      const Matrix ker = flu.kernel();
      // Two distinct feasible points in the affine family imply a feasible
      // segment, i.e. non-isolated solutions.
      std::vector<Vector> probes{xp};
      for (Eigen::Index c = 0; c < ker.cols(); ++c) {
        const Vector v = ker.col(c).normalized();
        for (double t : {1e-3, 1.0, 1e3}) {
          probes.push_back(xp + t * scale * v);
          probes.push_back(xp - t * scale * v);
        }
      }
      if (ker.cols() > 1) {
        const Vector v = ker.rowwise().sum().normalized();
        probes.push_back(xp + scale * v);
        probes.push_back(xp - scale * v);
      }
      int feasible = 0;
      for (const Vector& p : probes)
        if (signs_ok(inst, scatter(s, p, n), tol.feasibility)) ++feasible;
      sp.feasible_point = feasible >= 2;
      if (sp.feasible_point) res.non_isolated = true;
    }
    res.singular_patterns.push_back(sp);
  }
  sort_lex(res.solutions);
  res.status = res.solutions.empty() ? LcpStatus::kInfeasiblePatternExhausted
                                     : LcpStatus::kSolved;
  return res;
}

bool lcp_is_r0(const Matrix& m, const Tolerances& tol) {
  const LcpResult r = lcp_enumerate(LcpInstance(m, Vector::Zero(m.rows())), tol);
  return !r.non_isolated && r.solutions.size() == 1 &&
         r.solutions.front().cwiseAbs().maxCoeff() <= tol.feasibility;
}

DegreeEstimate lcp_degree(const Matrix& m, std::uint64_t seed, const Tolerances& tol) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols() || n == 0) throw InvalidInput("lcp_degree: M must be square");
  if (n > 12) throw InvalidInput("lcp_degree: n > 12");
  if (!lcp_is_r0(m, tol)) throw InvalidInput("lcp_degree: M is not an R0 matrix");

  // rows equal to e_i make both sides of the min agree identically; such a
  // coordinate is always counted on the x side and never a tie
  unsigned trivial = 0;
  for (int i = 0; i < n; ++i)
    if (m.row(i) == Matrix::Identity(n, n).row(i)) trivial |= 1u << i;

  Rng rng(seed);
  constexpr int kMaxRetries = 20;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    Vector p = rng.uniform_vector(n, -1.0, 1.0);
    p *= rng.uniform(1e-3, 1e-2) / p.cwiseAbs().maxCoeff();

    DegreeEstimate est;
    est.method = DegreeMethod::kRegularValue;
    est.regular_value = p;
    est.retries = attempt;
    est.tie_margin = std::numeric_limits<double>::infinity();
    bool regular = true;
    for (unsigned mask = 0; mask < (1u << n) && regular; ++mask) {
      if ((mask & trivial) != trivial) continue;
      // bit i set: min picks x_i = p_i; otherwise (Mx)_i = p_i
      Matrix piece(n, n);
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i))
          piece.row(i) = Matrix::Identity(n, n).row(i);
        else
          piece.row(i) = m.row(i);
      }
      Eigen::PartialPivLU<Matrix> lu(piece);
      const double det = lu.determinant();
      if (std::abs(det) < tol.singular_det) continue;  // generic p misses it
      const Vector x = lu.solve(p);
      const Vector mx = m * x;
      double margin = std::numeric_limits<double>::infinity();
      bool selected = true;
      bool near = true;  // selected up to a tie
      for (int i = 0; i < n; ++i) {
        if (trivial & (1u << i)) continue;
        const double gap = (mask & (1u << i)) ? mx[i] - x[i] : x[i] - mx[i];
        margin = std::min(margin, std::abs(gap));
        if (gap < 0.0) selected = false;
        if (gap < -tol.tie) near = false;
      }
      if (near && margin <= tol.tie) {
        regular = false;
        break;
      }
      if (!selected) continue;
      est.preimages.push_back({x, mask, det > 0 ? 1 : -1, margin});
      est.value += det > 0 ? 1 : -1;
      est.tie_margin = std::min(est.tie_margin, margin);
    }
    if (regular) return est;
  }
  throw DegenerateInput("lcp_degree: no regular value found after " +
                        std::to_string(kMaxRetries) + " retries");
}

}  // namespace pcpkit
