#pragma once

#include <vector>

#include "gittins/bandit_model.hpp"

namespace gittins {

/// Relative pivot cutoff for Gaussian elimination.
inline constexpr double kPivotTolerance = 1e-12;

/// Solves A X = B by Gaussian elimination with partial (row) pivoting.
/// Throws SingularMatrix when a pivot falls below kPivotTolerance times the
/// largest initial magnitude in its column. Arithmetic is tallied into `ops`
/// when given.
Matrix solve_dense(Matrix A, Matrix B, OpCounter* ops = nullptr);
Vector solve_dense(const Matrix& A, const Vector& b, OpCounter* ops = nullptr);

/// Work and reward measures of the policy that continues on S and stops off it.
struct PolicyMeasures {
  Vector g;
  Vector f;
  StateSet S;
};

/// Solves (I_S - beta P_SS) y = 1_S and (I_S - beta P_SS) z = R_S on the
/// |S|x|S| subsystem; g and f are zero off S. At beta = 1 a recurrent
/// sub-chain on S surfaces as SingularMatrix.
PolicyMeasures evaluate_policy(const BanditInstance& inst, const StateSet& S);

/// Indices of the members of S in increasing order.
std::vector<std::size_t> members(const StateSet& S);

}  // namespace gittins
