#pragma once

#include <cstddef>

#include "gittins/bandit_model.hpp"

namespace gittins {

inline constexpr std::size_t kBruteForceMaxStates = 20;

/// Largest f_i^S / g_i^S over continuation sets S containing i, by
/// enumeration. Sets whose sub-chain is recurrent (beta = 1) are skipped.
double gittins_bruteforce(const BanditInstance& inst, std::size_t state);

/// All n indices from a single pass over the 2^n - 1 nonempty sets.
Vector gittins_bruteforce_all(const BanditInstance& inst);

/// Discounted state-action occupancies from initial state i under the
/// policy continuing on S: x1 on S (action 1), x0 on the complement.
struct OccupancyMeasures {
  Vector x0;
  Vector x1;
};

/// Solves the basis system x B^S = e_i directly (row form).
OccupancyMeasures occupancy_measures(const BanditInstance& inst, const StateSet& S,
                                     std::size_t state);

/// Sup-norm of (1-beta) x0 + x1 (I - beta P) - e_i.
double occupancy_residual(const BanditInstance& inst, const OccupancyMeasures& occ,
                          std::size_t state);

/// f^tau(R, Q) = x1 R + (1-beta) x0 Q.
double reward_from_occupancy(const BanditInstance& inst, const OccupancyMeasures& occ,
                             const Vector& R, const Vector& Q);
/// g^tau = x1 1.
double work_from_occupancy(const OccupancyMeasures& occ);

struct MarginalMeasures {
  Vector w;
  Vector r;
  Vector nuRate;
};

/// w, r and nu = r/w for the continuation set S from the policy measures.
/// At beta = 1 the workloads on S vanish and nuRate is meaningful only off S.
MarginalMeasures marginal_measures_direct(const BanditInstance& inst, const StateSet& S);

/// Absolute residuals of the work, reward and combined (nu = 1)
/// decomposition identities, for tau continuing on Sprime relative to S.
struct DecompositionResidual {
  double work = 0.0;
  double reward = 0.0;
  double combined = 0.0;
};

DecompositionResidual decomposition_check(const BanditInstance& inst, const StateSet& S,
                                          const StateSet& Sprime, std::size_t state);

/// For every prefix S_k of result.order, checks
/// max_{j outside S_k} nu_j^{S_k} <= min_{j in S_k} nu_j^{S_k} + slack.
bool optimality_interval_check(const BanditInstance& inst, const IndexResult& result,
                               double slack = 1e-9);

/// Index vector at beta1 is componentwise <= the one at beta2 (+ slack).
bool kelly_monotonicity_check(const BanditInstance& inst, double beta1, double beta2,
                              double slack = 1e-9);

}  // namespace gittins
