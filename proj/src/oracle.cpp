#include "gittins/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gittins/index_fp.hpp"
#include "gittins/linsolve.hpp"

namespace gittins {

namespace {

constexpr double kMinWork = 1e-12;

void require_small(const BanditInstance& inst) {
  if (inst.n() > kBruteForceMaxStates) {
    throw InstanceTooLarge("brute-force index needs n <= " +
                           std::to_string(kBruteForceMaxStates) + ", got " +
                           std::to_string(inst.n()));
  }
}

StateSet mask_to_set(std::size_t n, unsigned long mask) {
  StateSet s(n, false);
  for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1UL;
  return s;
}

}  // namespace

Vector gittins_bruteforce_all(const BanditInstance& inst) {
  require_small(inst);
  const std::size_t n = inst.n();
  Vector best(n, -std::numeric_limits<double>::infinity());
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    const StateSet S = mask_to_set(n, mask);
    PolicyMeasures pm;
    try {
      pm = evaluate_policy(inst, S);
    } catch (const SingularMatrix&) {
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!S[i] || pm.g[i] < kMinWork) continue;
      best[i] = std::max(best[i], pm.f[i] / pm.g[i]);
    }
  }
  return best;
}

double gittins_bruteforce(const BanditInstance& inst, std::size_t state) {
  require_small(inst);
  const std::size_t n = inst.n();
  if (state >= n) throw DimensionMismatch("gittins_bruteforce: state out of range");
  double best = -std::numeric_limits<double>::infinity();
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    if (!((mask >> state) & 1UL)) continue;
    PolicyMeasures pm;
    try {
      pm = evaluate_policy(inst, mask_to_set(n, mask));
    } catch (const SingularMatrix&) {
      continue;
    }
    if (pm.g[state] < kMinWork) continue;
    best = std::max(best, pm.f[state] / pm.g[state]);
  }
  return best;
}

OccupancyMeasures occupancy_measures(const BanditInstance& inst, const StateSet& S,
                                     std::size_t state) {
  const std::size_t n = inst.n();
  const double beta = inst.beta;
  if (!(beta < 1.0)) throw BadDiscount("occupancy measures need beta < 1");
  if (S.size() != n || state >= n) throw DimensionMismatch("occupancy_measures: bad arguments");

  // Row j of the basis matrix is row j of (I - beta P) for j in S and
  // (1 - beta) e_j otherwise; solve y B = e_i as B^T y^T = e_i^T.
  Matrix Bt(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (S[j]) {
      for (std::size_t l = 0; l < n; ++l) Bt(l, j) = (l == j ? 1.0 : 0.0) - beta * inst.P(j, l);
    } else {
      Bt(j, j) = 1.0 - beta;
    }
  }
  Vector e(n, 0.0);
  e[state] = 1.0;
  const Vector y = solve_dense(Bt, e);

  OccupancyMeasures occ{Vector(n, 0.0), Vector(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) (S[j] ? occ.x1 : occ.x0)[j] = y[j];
  return occ;
}

double occupancy_residual(const BanditInstance& inst, const OccupancyMeasures& occ,
                          std::size_t state) {
  const std::size_t n = inst.n();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double lhs = (1.0 - inst.beta) * occ.x0[j] + occ.x1[j];
    for (std::size_t l = 0; l < n; ++l) lhs -= inst.beta * occ.x1[l] * inst.P(l, j);
    worst = std::max(worst, std::abs(lhs - (j == state ? 1.0 : 0.0)));
  }
  return worst;
}

double reward_from_occupancy(const BanditInstance& inst, const OccupancyMeasures& occ,
                             const Vector& R, const Vector& Q) {
  double f = 0.0;
  for (std::size_t j = 0; j < inst.n(); ++j) {
    f += occ.x1[j] * R[j] + (1.0 - inst.beta) * occ.x0[j] * Q[j];
  }
  return f;
}

double work_from_occupancy(const OccupancyMeasures& occ) {
  double g = 0.0;
  for (double x : occ.x1) g += x;
  return g;
}

MarginalMeasures marginal_measures_direct(const BanditInstance& inst, const StateSet& S) {
  const std::size_t n = inst.n();
  const double beta = inst.beta;
  const PolicyMeasures pm = evaluate_policy(inst, S);
  MarginalMeasures mm{Vector(n), Vector(n), Vector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (S[i]) {
      mm.w[i] = (1.0 - beta) * pm.g[i];
      mm.r[i] = (1.0 - beta) * pm.f[i];
    } else {
      double gs = 0.0;
      double fs = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        gs += inst.P(i, j) * pm.g[j];
        fs += inst.P(i, j) * pm.f[j];
      }
      mm.w[i] = 1.0 + beta * gs;
      mm.r[i] = inst.R[i] + beta * fs;
    }
    mm.nuRate[i] = mm.r[i] / mm.w[i];
  }
  return mm;
}

DecompositionResidual decomposition_check(const BanditInstance& inst, const StateSet& S,
                                          const StateSet& Sprime, std::size_t state) {
  const std::size_t n = inst.n();
  const PolicyMeasures base = evaluate_policy(inst, S);
  const MarginalMeasures mm = marginal_measures_direct(inst, S);
  const OccupancyMeasures occ = occupancy_measures(inst, Sprime, state);
  const Vector zeros(n, 0.0);

  const double g_tau = work_from_occupancy(occ);
  const double f_tau = reward_from_occupancy(inst, occ, inst.R, zeros);

  double g_rhs = base.g[state];
  double f_rhs = base.f[state];
  for (std::size_t j = 0; j < n; ++j) {
    if (S[j]) {
      g_rhs -= mm.w[j] * occ.x0[j];
      f_rhs -= mm.r[j] * occ.x0[j];
    } else {
      g_rhs += mm.w[j] * occ.x1[j];
      f_rhs += mm.r[j] * occ.x1[j];
    }
  }
  constexpr double nu = 1.0;
  double c_rhs = base.f[state] - nu * base.g[state];
  for (std::size_t j = 0; j < n; ++j) {
    const double red = mm.r[j] - nu * mm.w[j];
    c_rhs += S[j] ? -red * occ.x0[j] : red * occ.x1[j];
  }
  return {std::abs(g_tau - g_rhs), std::abs(f_tau - f_rhs),
          std::abs((f_tau - nu * g_tau) - c_rhs)};
}

bool optimality_interval_check(const BanditInstance& inst, const IndexResult& result,
                               double slack) {
  const std::size_t n = inst.n();
  StateSet S(n, false);
  for (std::size_t k = 0; k + 1 < result.order.size(); ++k) {
    S[result.order[k]] = true;
    const MarginalMeasures mm = marginal_measures_direct(inst, S);
    double hi_out = -std::numeric_limits<double>::infinity();
    double lo_in = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (S[j]) {
        lo_in = std::min(lo_in, mm.nuRate[j]);
      } else {
        hi_out = std::max(hi_out, mm.nuRate[j]);
      }
    }
    if (!(hi_out <= lo_in + slack)) return false;
  }
  return true;
}

bool kelly_monotonicity_check(const BanditInstance& inst, double beta1, double beta2,
                              double slack) {
  BanditInstance lo = inst;
  BanditInstance hi = inst;
  lo.beta = beta1;
  hi.beta = beta2;
  const Vector a = fp_compute(lo).result.index;
  const Vector b = fp_compute(hi).result.index;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + slack) return false;
  }
  return true;
}

}  // namespace gittins
