#include "gittins/index_baselines.hpp"

#include <cmath>
#include <string>

#include "gittins/index_fp.hpp"
#include "gittins/linsolve.hpp"

namespace gittins {

namespace {

void require_discounted(const BanditInstance& inst, const char* algo) {
  if (!(inst.beta > 0.0 && inst.beta < 1.0)) {
    throw BadDiscount(std::string(algo) +
                      " requires 0 < beta < 1: its updates divide by 1 - beta, so only the "
                      "fast-pivoting algorithm handles the undiscounted case");
  }
}

}  // namespace

CPTableau cp_initial_tableau(const BanditInstance& inst) {
  require_discounted(inst, "conventional pivoting");
  const std::size_t n = inst.n();
  CPTableau tab;
  tab.A = Matrix(n, n);
  const double scale = 1.0 - inst.beta;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tab.A(i, j) = ((i == j ? 1.0 : 0.0) - inst.beta * inst.P(i, j)) / scale;
    }
  }
  tab.w.assign(n, 1.0);
  tab.r = inst.R;
  tab.inS.assign(n, false);
  return tab;
}

std::size_t cp_select(const CPTableau& tab, double& ratio, OpCounter* ops) {
  const std::size_t n = tab.n();
  std::size_t best = n;
  std::size_t scanned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (tab.inS[i]) continue;
    const double q = tab.r[i] / tab.w[i];
    ++scanned;
    if (best == n || q > ratio) {
      best = i;
      ratio = q;
    }
  }
  if (best == n) throw Error("cp_select: all states already selected");
  if (ops) ops->add(scanned, 0);
  return best;
}

void cp_pivot_step(CPTableau& tab, std::size_t pivot, OpCounter* ops) {
  const std::size_t n = tab.n();
  if (pivot >= n || tab.inS[pivot]) {
    throw Error("cp_pivot_step: state " + std::to_string(pivot + 1) + " is not selectable");
  }
  const std::size_t k = tab.k + 1;
  const std::size_t j = pivot;
  tab.inS[j] = true;
  tab.order.push_back(j);
  tab.k = k;
  if (k == n) return;

  OpCounter local;
  Matrix& A = tab.A;
  const double p = A(j, j);
  if (std::abs(p) < kDegeneratePivot) throw DegeneratePivot(k, p);
  tab.pivot = p;
  A(j, j) = 1.0;

  Vector v(n), h(n);
  for (std::size_t x = 0; x < n; ++x) {
    v[x] = A(x, j) / p;
    h[x] = -A(j, x);
  }
  local.add(n, 0);

  // Rank-one update; the pivot row and column are overwritten below.
  for (std::size_t x = 0; x < n; ++x) {
    if (x == j) continue;
    auto ax = A.row(x);
    const double vx = v[x];
    for (std::size_t y = 0; y < n; ++y) {
      if (y != j) ax[y] += vx * h[y];
    }
  }
  local.add((n - 1) * (n - 1), (n - 1) * (n - 1));

  for (std::size_t x = 0; x < n; ++x) A(x, j) = v[x];
  for (std::size_t y = 0; y < n; ++y) A(j, y) = h[y] / p;
  local.add(n, 0);

  const double wj = tab.w[j];
  const double rj = tab.r[j];
  for (std::size_t x = 0; x < n; ++x) {
    if (x == j) continue;
    // Rows outside S_k carry the opposite sign to rows in S_{k-1}.
    if (tab.inS[x]) {
      tab.w[x] += wj * A(x, j);
      tab.r[x] += rj * A(x, j);
    } else {
      tab.w[x] -= wj * A(x, j);
      tab.r[x] -= rj * A(x, j);
    }
  }
  tab.w[j] = wj / p;
  tab.r[j] = rj / p;
  local.add(2 * (n - 1) + 2, 2 * (n - 1));

  if (ops) *ops += local;
}

IndexResult cp_compute(const BanditInstance& inst) {
  CPTableau tab = cp_initial_tableau(inst);
  IndexResult res;
  res.index.assign(inst.n(), 0.0);
  for (std::size_t k = 1; k <= inst.n(); ++k) {
    double ratio = 0.0;
    const std::size_t pick = cp_select(tab, ratio, &res.flops);
    res.index[pick] = ratio;
    res.order.push_back(pick);
    cp_pivot_step(tab, pick, &res.flops);
  }
  return res;
}

SEState se_initial_state(const BanditInstance& inst) {
  require_discounted(inst, "state elimination");
  const std::size_t n = inst.n();
  SEState st;
  st.Ptil = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) st.Ptil(i, j) = inst.beta * inst.P(i, j);
  }
  st.betaVec.assign(n, inst.beta);
  st.rtil.resize(n);
  for (std::size_t i = 0; i < n; ++i) st.rtil[i] = (1.0 - inst.beta) * inst.R[i];
  st.inS.assign(n, false);
  return st;
}

std::size_t se_select(const SEState& st, double& ratio, OpCounter* ops) {
  const std::size_t n = st.n();
  std::size_t best = n;
  std::size_t scanned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (st.inS[i]) continue;
    const double q = st.rtil[i] / (1.0 - st.betaVec[i]);
    ++scanned;
    if (best == n || q > ratio) {
      best = i;
      ratio = q;
    }
  }
  if (best == n) throw Error("se_select: all states already selected");
  if (ops) ops->add(scanned, scanned);
  return best;
}

void se_eliminate(SEState& st, std::size_t pivot, OpCounter* ops) {
  const std::size_t n = st.n();
  if (pivot >= n || st.inS[pivot]) {
    throw Error("se_eliminate: state " + std::to_string(pivot + 1) + " is not selectable");
  }
  const std::size_t k = st.k + 1;
  const std::size_t j = pivot;
  st.inS[j] = true;
  st.order.push_back(j);
  st.k = k;
  if (k == n) return;

  std::vector<std::size_t> active;
  active.reserve(n - k);
  for (std::size_t i = 0; i < n; ++i) {
    if (!st.inS[i]) active.push_back(i);
  }
  const std::size_t m = active.size();

  const double denom = 1.0 - st.Ptil(j, j);
  if (std::abs(denom) < kDegeneratePivot) throw DegeneratePivot(k, denom);
  const double scale = 1.0 / denom;
  for (std::size_t i : active) st.Ptil(i, j) *= scale;

  const auto pj = st.Ptil.row(j);
  for (std::size_t i : active) {
    auto pi = st.Ptil.row(i);
    const double pij = pi[j];
    double rowsum = 0.0;
    for (std::size_t l : active) {
      pi[l] += pij * pj[l];
      rowsum += pi[l];
    }
    st.betaVec[i] = rowsum;
    st.rtil[i] += st.rtil[j] * pij;
  }

  if (ops) {
    ops->add(1 + m + m * m + m, 1 + m * m + m * (m - 1) + m);
  }
}

IndexResult se_compute(const BanditInstance& inst) {
  SEState st = se_initial_state(inst);
  IndexResult res;
  res.index.assign(inst.n(), 0.0);
  for (std::size_t k = 1; k <= inst.n(); ++k) {
    double ratio = 0.0;
    const std::size_t pick = se_select(st, ratio, &res.flops);
    res.index[pick] = ratio;
    res.order.push_back(pick);
    se_eliminate(st, pick, &res.flops);
  }
  return res;
}

VWBState vwb_ratios(const BanditInstance& inst, const StateSet& S, OpCounter* ops) {
  const std::size_t n = inst.n();
  const double beta = inst.beta;
  const auto idx = members(S);
  const std::size_t m = idx.size();
  OpCounter local;

  VWBState st{Vector(n, 0.0), Vector(n, 0.0)};
  if (m > 0) {
    Matrix M(m, m);
    Vector ra(m), rb(m, beta);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) {
        M(x, y) = (x == y ? 1.0 : 0.0) - beta * inst.P(idx[x], idx[y]);
      }
      ra[x] = beta * inst.R[idx[x]];
    }
    local.add(m * m + m, m);
    // Two independent eliminations, one per right-hand side.
    const Vector a = solve_dense(M, ra, &local);
    const Vector b = solve_dense(M, rb, &local);
    for (std::size_t x = 0; x < m; ++x) {
      st.a[idx[x]] = a[x];
      st.b[idx[x]] = b[x];
    }
  }

  std::size_t outside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (S[i]) continue;
    ++outside;
    double sa = inst.R[i];
    double sb = 1.0;
    for (std::size_t x = 0; x < m; ++x) {
      const double p = inst.P(i, idx[x]);
      sa += p * st.a[idx[x]];
      sb += p * st.b[idx[x]];
    }
    st.a[i] = beta * sa;
    st.b[i] = beta * sb;
  }
  local.add(outside * (2 * m + 2), outside * (2 * m));
  if (ops) *ops += local;
  return st;
}

IndexResult vwb_compute(const BanditInstance& inst) {
  require_discounted(inst, "the VWB ratio algorithm");
  const std::size_t n = inst.n();
  IndexResult res;
  res.index.assign(n, 0.0);
  StateSet S(n, false);
  for (std::size_t k = 1; k <= n; ++k) {
    const VWBState st = vwb_ratios(inst, S, &res.flops);
    std::size_t best = n;
    double ratio = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (S[i]) continue;
      const double q = st.a[i] / st.b[i];
      res.flops.add(1, 0);
      if (best == n || q > ratio) {
        best = i;
        ratio = q;
      }
    }
    res.index[best] = ratio;
    res.order.push_back(best);
    S[best] = true;
  }
  return res;
}

}  // namespace gittins
