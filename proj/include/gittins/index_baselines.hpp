#pragma once

#include <cstddef>
#include <vector>

#include "gittins/bandit_model.hpp"

namespace gittins {

// ---------------------------------------------------------------------------
// Conventional pivoting on the full n x n tableau.
// ---------------------------------------------------------------------------

/// Full parametric-simplex tableau. A starts at (I - beta P)/(1 - beta),
/// w at 1 and r at R. After step k, w and r hold the marginal workloads and
/// rewards of S_k on every state.
struct CPTableau {
  Matrix A;
  Vector w;
  Vector r;
  std::vector<std::size_t> order;
  StateSet inS;
  std::size_t k = 0;
  double pivot = 0.0;  // p^{(k)} of the last step

  std::size_t n() const { return w.size(); }
};

CPTableau cp_initial_tableau(const BanditInstance& inst);
/// argmax of r/w outside S, smallest state on ties. Returns the state and
/// writes its ratio to `ratio`.
std::size_t cp_select(const CPTableau& tab, double& ratio, OpCounter* ops = nullptr);
void cp_pivot_step(CPTableau& tab, std::size_t pivot, OpCounter* ops = nullptr);
IndexResult cp_compute(const BanditInstance& inst);

// ---------------------------------------------------------------------------
// State elimination.
// ---------------------------------------------------------------------------

/// Ptil starts at beta P, betaVec at beta 1 and rtil at (1 - beta) R. Only
/// entries on states outside S_k are meaningful after step k.
struct SEState {
  Matrix Ptil;
  Vector betaVec;
  Vector rtil;
  std::vector<std::size_t> order;
  StateSet inS;
  std::size_t k = 0;

  std::size_t n() const { return rtil.size(); }
};

SEState se_initial_state(const BanditInstance& inst);
std::size_t se_select(const SEState& st, double& ratio, OpCounter* ops = nullptr);
void se_eliminate(SEState& st, std::size_t pivot, OpCounter* ops = nullptr);
IndexResult se_compute(const BanditInstance& inst);

// ---------------------------------------------------------------------------
// Ratio algorithm solving two restricted linear systems per step.
// ---------------------------------------------------------------------------

/// a and b over all states for the current continuation set S_{k-1}.
struct VWBState {
  Vector a;
  Vector b;
};

/// Solves the two |S|-dimensional systems afresh and extends a, b to the
/// complement of S by their defining recursions.
VWBState vwb_ratios(const BanditInstance& inst, const StateSet& S, OpCounter* ops = nullptr);
IndexResult vwb_compute(const BanditInstance& inst);

}  // namespace gittins
