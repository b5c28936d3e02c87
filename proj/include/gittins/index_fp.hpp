#pragma once

#include <cstddef>
#include <vector>

#include "gittins/bandit_model.hpp"

namespace gittins {

/// Absolute cutoff on the pivot denominator 1 - beta (p_jj - A_{jS} P_{Sj}).
inline constexpr double kDegeneratePivot = 1e-12;

/// Working set of the fast-pivoting algorithm after k steps.
///
/// `lower(i, c)` holds A_{i, order[c]} for states i outside S_k, so the
/// per-step update touches a contiguous prefix of each row. In extended mode
/// `upper(c, j)` holds A_{order[c], j} for states j outside S_k.
struct ReducedTableau {
  Matrix lower;
  Matrix upper;
  Vector w;
  Vector nuRate;
  std::vector<std::size_t> order;
  StateSet inS;
  std::size_t k = 0;
  double alpha = 0.0;
  bool extended = false;

  std::size_t n() const { return w.size(); }
};

/// One step of extended output.
struct ExtendedStep {
  std::size_t state = 0;
  double index = 0.0;
  double alpha = 0.0;
  Vector w;       // w^{(k)} over all states
  Vector nuRate;  // nu^{(k)} over all states
  Vector column;  // A_{S_k^c i_k}^{(k)}, zero on S_k
  Vector row;     // A_{i_k S_k^c}^{(k)}, zero on S_k
};

struct FpOutput {
  IndexResult result;
  std::vector<ExtendedStep> steps;  // empty unless run in extended mode
};

/// w = 1, nu = R, S empty.
ReducedTableau fp_initial_tableau(const BanditInstance& inst, bool extended);

/// argmax of nuRate over states outside S, smallest state on ties.
std::size_t fp_select(const ReducedTableau& tab);

/// Moves `pivot` into the continuation set and updates the tableau. In plain
/// mode the final step (empty complement) skips the pivot computation.
void fp_pivot_step(ReducedTableau& tab, const BanditInstance& inst, std::size_t pivot,
                   OpCounter* ops = nullptr);

/// Fast-pivoting index computation. `extended` selects FP(1), which also
/// maintains w and nu on the continuation sets; it needs beta < 1.
FpOutput fp_compute(const BanditInstance& inst, bool extended = false);

}  // namespace gittins
