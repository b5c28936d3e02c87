#include "gittins/index_fp.hpp"

#include <cmath>
#include <string>

namespace gittins {

ReducedTableau fp_initial_tableau(const BanditInstance& inst, bool extended) {
  const std::size_t n = inst.n();
  ReducedTableau tab;
  tab.lower = Matrix(n, n);
  if (extended) tab.upper = Matrix(n, n);
  tab.w.assign(n, 1.0);
  tab.nuRate = inst.R;
  tab.inS.assign(n, false);
  tab.order.reserve(n);
  tab.extended = extended;
  return tab;
}

std::size_t fp_select(const ReducedTableau& tab) {
  std::size_t best = tab.n();
  for (std::size_t i = 0; i < tab.n(); ++i) {
    if (tab.inS[i]) continue;
    if (best == tab.n() || tab.nuRate[i] > tab.nuRate[best]) best = i;
  }
  if (best == tab.n()) throw Error("fp_select: all states already selected");
  return best;
}

void fp_pivot_step(ReducedTableau& tab, const BanditInstance& inst, std::size_t pivot,
                   OpCounter* ops) {
  const std::size_t n = tab.n();
  if (pivot >= n || tab.inS[pivot]) {
    throw Error("fp_pivot_step: state " + std::to_string(pivot + 1) + " is not selectable");
  }
  const double beta = inst.beta;
  const std::size_t k = tab.k + 1;
  const std::size_t m = k - 1;  // |S_{k-1}|
  const std::size_t j = pivot;
  OpCounter local;

  tab.inS[j] = true;
  std::vector<std::size_t> active;
  active.reserve(n - k);
  for (std::size_t i = 0; i < n; ++i) {
    if (!tab.inS[i]) active.push_back(i);
  }

  // P_{S_{k-1} j}, gathered in selection order.
  std::vector<double> pcol(m);
  for (std::size_t c = 0; c < m; ++c) pcol[c] = inst.P(tab.order[c], j);

  Vector column(n, 0.0);
  const bool pivoting = !active.empty() || tab.extended;
  if (pivoting) {
    double s = inst.P(j, j);
    const auto ljrow = tab.lower.row(j);
    for (std::size_t c = 0; c < m; ++c) s -= ljrow[c] * pcol[c];
    const double denom = 1.0 - beta * s;
    local.add(m + 1, m + 1);
    if (std::abs(denom) < kDegeneratePivot) throw DegeneratePivot(k, denom);
    tab.alpha = -beta / denom;
    local.add(1, 0);

    for (std::size_t i : active) {
      auto li = tab.lower.row(i);
      double t = inst.P(i, j);
      for (std::size_t c = 0; c < m; ++c) t -= li[c] * pcol[c];
      const double a = tab.alpha * t;
      for (std::size_t c = 0; c < m; ++c) li[c] -= a * ljrow[c];
      li[m] = a;
      column[i] = a;
    }
    local.add(active.size() * (2 * m + 1), active.size() * (2 * m));

    if (tab.extended) {
      // Row A_{j S_k^c}^{(k)} = -alpha (P_{j S_k^c} + P_{j S_{k-1}} A_{S_{k-1} S_k^c}).
      Vector t(n, 0.0);
      for (std::size_t l : active) t[l] = inst.P(j, l);
      for (std::size_t c = 0; c < m; ++c) {
        const double prc = inst.P(j, tab.order[c]);
        const auto uc = tab.upper.row(c);
        for (std::size_t l : active) t[l] += prc * uc[l];
      }
      for (std::size_t l : active) t[l] *= -tab.alpha;
      for (std::size_t c = 0; c < m; ++c) {
        auto uc = tab.upper.row(c);
        const double ucj = uc[j];
        for (std::size_t l : active) uc[l] += ucj * t[l];
      }
      auto um = tab.upper.row(m);
      for (std::size_t l : active) um[l] = t[l];
      local.add(active.size() * (2 * m + 1), active.size() * (2 * m));
    }
  }

  const double wj = tab.w[j];
  const double nustar = tab.nuRate[j];
  for (std::size_t i : active) {
    const double wold = tab.w[i];
    tab.w[i] = wold - wj * column[i];
    tab.nuRate[i] = nustar - (wold / tab.w[i]) * (nustar - tab.nuRate[i]);
  }
  local.add(active.size() * 3, active.size() * 3);

  if (tab.extended) {
    const double wjk = -(tab.alpha * (1.0 - beta) / beta) * wj;
    local.add(3, 1);
    for (std::size_t c = 0; c < m; ++c) {
      const std::size_t s = tab.order[c];
      const double wold = tab.w[s];
      tab.w[s] = wold + wjk * tab.upper(c, j);
      tab.nuRate[s] = nustar - (wold / tab.w[s]) * (nustar - tab.nuRate[s]);
    }
    local.add(m * 3, m * 3);
    tab.w[j] = wjk;
    tab.nuRate[j] = nustar;
  }

  tab.order.push_back(j);
  tab.k = k;
  if (ops) *ops += local;
}

FpOutput fp_compute(const BanditInstance& inst, bool extended) {
  if (!(inst.beta > 0.0 && inst.beta <= 1.0)) {
    throw BadDiscount("fast pivoting requires 0 < beta <= 1");
  }
  if (extended && inst.beta >= 1.0) {
    throw BadDiscount(
        "extended output is undefined at beta = 1 (workloads on the continuation set scale "
        "with 1 - beta)");
  }
  const std::size_t n = inst.n();
  FpOutput out;
  out.result.index.assign(n, 0.0);
  out.result.order.reserve(n);

  ReducedTableau tab = fp_initial_tableau(inst, extended);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t pick = fp_select(tab);
    out.result.index[pick] = tab.nuRate[pick];
    out.result.order.push_back(pick);
    fp_pivot_step(tab, inst, pick, &out.result.flops);

    if (extended) {
      ExtendedStep rec;
      rec.state = pick;
      rec.index = out.result.index[pick];
      rec.alpha = tab.alpha;
      rec.w = tab.w;
      rec.nuRate = tab.nuRate;
      rec.column.assign(n, 0.0);
      rec.row.assign(n, 0.0);
      const std::size_t c = tab.k - 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (tab.inS[i]) continue;
        rec.column[i] = tab.lower(i, c);
        rec.row[i] = tab.upper(c, i);
      }
      out.steps.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace gittins
