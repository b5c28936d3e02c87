#include "gittins/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace gittins {

Matrix solve_dense(Matrix A, Matrix B, OpCounter* ops) {
  const std::size_t m = A.rows();
  if (A.cols() != m) throw DimensionMismatch("solve_dense: matrix is not square");
  if (B.rows() != m) throw DimensionMismatch("solve_dense: right-hand side is not conformable");
  const std::size_t k = B.cols();
  OpCounter local;

  std::vector<double> colmax(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) colmax[j] = std::max(colmax[j], std::abs(A(i, j)));
  }

  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r) {
      if (std::abs(A(r, c)) > std::abs(A(piv, c))) piv = r;
    }
    const double pivot = A(piv, c);
    if (colmax[c] == 0.0 || std::abs(pivot) < kPivotTolerance * colmax[c]) {
      throw SingularMatrix("solve_dense: pivot " + std::to_string(pivot) + " in column " +
                           std::to_string(c + 1) + " is below tolerance");
    }
    if (piv != c) {
      std::swap_ranges(A.row(c).begin(), A.row(c).end(), A.row(piv).begin());
      std::swap_ranges(B.row(c).begin(), B.row(c).end(), B.row(piv).begin());
    }
    for (std::size_t r = c + 1; r < m; ++r) {
      const double factor = A(r, c) / pivot;
      A(r, c) = 0.0;
      for (std::size_t j = c + 1; j < m; ++j) A(r, j) -= factor * A(c, j);
      for (std::size_t j = 0; j < k; ++j) B(r, j) -= factor * B(c, j);
      local.add(1 + (m - c - 1) + k, (m - c - 1) + k);
    }
  }

  for (std::size_t c = m; c-- > 0;) {
    for (std::size_t j = 0; j < k; ++j) {
      double acc = B(c, j);
      for (std::size_t l = c + 1; l < m; ++l) acc -= A(c, l) * B(l, j);
      B(c, j) = acc / A(c, c);
    }
    local.add(k * (m - c - 1 + 1), k * (m - c - 1));
  }

  if (ops) *ops += local;
  return B;
}

Vector solve_dense(const Matrix& A, const Vector& b, OpCounter* ops) {
  Matrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  Matrix x = solve_dense(A, std::move(rhs), ops);
  Vector out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(i, 0);
  return out;
}

std::vector<std::size_t> members(const StateSet& S) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i]) out.push_back(i);
  }
  return out;
}

PolicyMeasures evaluate_policy(const BanditInstance& inst, const StateSet& S) {
  const std::size_t n = inst.n();
  if (S.size() != n) throw DimensionMismatch("evaluate_policy: set size differs from n");
  PolicyMeasures out{Vector(n, 0.0), Vector(n, 0.0), S};
  const auto idx = members(S);
  const std::size_t m = idx.size();
  if (m == 0) return out;

  Matrix A(m, m);
  Matrix rhs(m, 2);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      A(a, b) = (a == b ? 1.0 : 0.0) - inst.beta * inst.P(idx[a], idx[b]);
    }
    rhs(a, 0) = 1.0;
    rhs(a, 1) = inst.R[idx[a]];
  }
  const Matrix x = solve_dense(std::move(A), std::move(rhs));
  for (std::size_t a = 0; a < m; ++a) {
    out.g[idx[a]] = x(a, 0);
    out.f[idx[a]] = x(a, 1);
  }
  return out;
}

}  // namespace gittins
