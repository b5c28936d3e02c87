#include "gittins/stopping.hpp"

#include <algorithm>
#include <cmath>

#include "gittins/index_fp.hpp"
#include "gittins/linsolve.hpp"

namespace gittins {

Vector reduce_terminal_rewards(const StoppingInstance& inst) {
  const BanditInstance& b = inst.base;
  const std::size_t n = b.n();
  Vector rhat(n);
  for (std::size_t i = 0; i < n; ++i) {
    double pq = 0.0;
    for (std::size_t j = 0; j < n; ++j) pq += b.P(i, j) * inst.Q[j];
    rhat[i] = b.R[i] - (inst.Q[i] - b.beta * pq);
  }
  return rhat;
}

StoppingSolution solve_optimal_stopping(const StoppingInstance& inst) {
  const BanditInstance& b = inst.base;
  const std::size_t n = b.n();
  StoppingSolution sol;
  sol.rhat = reduce_terminal_rewards(inst);

  BanditInstance reduced{b.P, sol.rhat, b.beta};
  sol.indexHat = fp_compute(reduced).result.index;
  sol.stopSet.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    sol.stopSet[i] = sol.indexHat[i] <= inst.nu + kStopTieTolerance;
  }

  if (b.beta < 1.0) {
    StateSet cont(n);
    for (std::size_t i = 0; i < n; ++i) cont[i] = !sol.stopSet[i];
    // Q plus the reduced-reward value of continuing on the complement.
    BanditInstance charged{b.P, sol.rhat, b.beta};
    for (double& r : charged.R) r -= inst.nu;
    const Vector fhat = evaluate_policy(charged, cont).f;
    Vector value(n);
    for (std::size_t i = 0; i < n; ++i) value[i] = inst.Q[i] + fhat[i];
    sol.value = std::move(value);
  }
  return sol;
}

Vector value_iteration(const StoppingInstance& inst, double tol) {
  const BanditInstance& b = inst.base;
  if (!(b.beta < 1.0)) throw BadDiscount("value iteration needs beta < 1");
  if (!(tol > 0.0)) throw Error("value_iteration: tolerance must be positive");
  const std::size_t n = b.n();
  Vector v = inst.Q;
  Vector next(n);
  const double bound = b.beta / (1.0 - b.beta);
  for (;;) {
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double pv = 0.0;
      for (std::size_t j = 0; j < n; ++j) pv += b.P(i, j) * v[j];
      next[i] = std::max(inst.Q[i], b.R[i] - inst.nu + b.beta * pv);
      diff = std::max(diff, std::abs(next[i] - v[i]));
    }
    v.swap(next);
    if (bound * diff <= tol) return v;
  }
}

Vector evaluate_stopping_rule(const StoppingInstance& inst, const StateSet& continueSet) {
  const BanditInstance& b = inst.base;
  const std::size_t n = b.n();
  if (continueSet.size() != n) throw DimensionMismatch("continue set size differs from n");
  const auto idx = members(continueSet);
  Vector v = inst.Q;
  if (idx.empty()) return v;

  const std::size_t m = idx.size();
  Matrix A(m, m);
  Vector rhs(m);
  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t i = idx[x];
    double stop_part = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!continueSet[j]) stop_part += b.P(i, j) * inst.Q[j];
    }
    rhs[x] = b.R[i] - inst.nu + b.beta * stop_part;
    for (std::size_t y = 0; y < m; ++y) {
      A(x, y) = (x == y ? 1.0 : 0.0) - b.beta * b.P(i, idx[y]);
    }
  }
  const Vector vc = solve_dense(A, rhs);
  for (std::size_t x = 0; x < m; ++x) v[idx[x]] = vc[x];
  return v;
}

}  // namespace gittins
