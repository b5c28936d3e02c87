#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gittins/bandit_model.hpp"

namespace gittins {

/// |a - b| / max(1, |a|, |b|). The unit floor keeps indices near zero from
/// turning round-off into large relative errors.
inline double relative_deviation(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double max_relative_deviation(const Vector& a, const Vector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, relative_deviation(a[i], b[i]));
  }
  return worst;
}

/// Two selection orders agree modulo ties when, at every rank, the states
/// they pick carry the same index value within `tol`.
inline bool orders_agree(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                         const Vector& index, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (relative_deviation(index[a[k]], index[b[k]]) > tol) return false;
  }
  return true;
}

inline bool is_nonincreasing(const IndexResult& res, double slack = 1e-12) {
  for (std::size_t k = 1; k < res.order.size(); ++k) {
    if (res.index[res.order[k]] > res.index[res.order[k - 1]] + slack) return false;
  }
  return true;
}

inline bool is_permutation_of_states(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t s : order) {
    if (s >= n || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

}  // namespace gittins
