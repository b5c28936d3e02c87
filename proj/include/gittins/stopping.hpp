#pragma once

#include <optional>

#include "gittins/bandit_model.hpp"

namespace gittins {

/// States whose index is within this distance of the charge count as ties
/// and are placed in the stopping set.
inline constexpr double kStopTieTolerance = 1e-12;

struct StoppingSolution {
  Vector rhat;       // R - (I - beta P) Q
  Vector indexHat;   // Gittins index of the bandit (P, rhat, beta)
  StateSet stopSet;  // { i : indexHat_i <= nu }
  std::optional<Vector> value;  // optimal values; absent at beta = 1
};

/// R - (I - beta P) Q.
Vector reduce_terminal_rewards(const StoppingInstance& inst);

/// Stops exactly where the index of the reduced bandit is at most nu.
StoppingSolution solve_optimal_stopping(const StoppingInstance& inst);

/// Successive approximation of V = max(Q, R - nu + beta P V) from V = Q,
/// terminated once beta ||V^m - V^{m-1}|| / (1 - beta) <= tol.
Vector value_iteration(const StoppingInstance& inst, double tol);

/// Value of the stationary rule that continues exactly on `continueSet`.
Vector evaluate_stopping_rule(const StoppingInstance& inst, const StateSet& continueSet);

}  // namespace gittins
