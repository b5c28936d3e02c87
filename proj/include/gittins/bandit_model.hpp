#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "gittins/errors.hpp"
#include "gittins/matrix.hpp"

namespace gittins {

/// Arithmetic-operation tallies for the core update loops of an algorithm.
struct OpCounter {
  std::uint64_t muldiv = 0;
  std::uint64_t addsub = 0;

  std::uint64_t total() const { return muldiv + addsub; }
  void reset() { muldiv = addsub = 0; }
  void add(std::uint64_t md, std::uint64_t as) {
    muldiv += md;
    addsub += as;
  }
  OpCounter& operator+=(const OpCounter& o) {
    add(o.muldiv, o.addsub);
    return *this;
  }
};

/// Membership mask over states 0..n-1.
using StateSet = std::vector<bool>;

/// Finite-state bandit: transition matrix P, active rewards R, discount beta.
/// States are 0-based in memory and 1-based in files and reports.
struct BanditInstance {
  Matrix P;
  Vector R;
  double beta = 0.0;

  std::size_t n() const { return R.size(); }
};

/// Optimal stopping problem: a bandit plus terminal rewards Q and a
/// per-period continuation charge nu.
struct StoppingInstance {
  BanditInstance base;
  Vector Q;
  double nu = 0.0;

  std::size_t n() const { return base.n(); }
};

using AnyInstance = std::variant<BanditInstance, StoppingInstance>;

/// Output of every index algorithm. order[k] is the state picked at step k+1;
/// index values along the order are nonincreasing.
struct IndexResult {
  std::vector<std::size_t> order;
  Vector index;
  OpCounter flops;
};

inline constexpr double kStochasticTolerance = 1e-9;

/// Returns `raw` unchanged iff it is a valid bandit; never renormalizes.
BanditInstance validate_instance(BanditInstance raw);
StoppingInstance validate_instance(StoppingInstance raw);

struct RandomInstanceOptions {
  std::size_t n = 1;
  double density = 1.0;
  double reward_min = 0.0;
  double reward_max = 1.0;
  double beta = 0.9;
  std::uint64_t seed = 0;
};

/// Each row gets max(1, round(density*n)) distinct nonzero columns filled with
/// uniform(0,1) draws and normalized; rewards are uniform on the reward range.
BanditInstance random_instance(const RandomInstanceOptions& opts);

AnyInstance load_instance(const std::filesystem::path& path);
AnyInstance parse_instance(const std::string& json_text);
BanditInstance load_bandit(const std::filesystem::path& path);
StoppingInstance load_stopping(const std::filesystem::path& path);

std::string to_json(const BanditInstance& inst);
std::string to_json(const StoppingInstance& inst);
void save_instance(const BanditInstance& inst, const std::filesystem::path& path);
void save_instance(const StoppingInstance& inst, const std::filesystem::path& path);

StateSet make_set(std::size_t n, std::initializer_list<std::size_t> members);
std::size_t set_size(const StateSet& s);

}  // namespace gittins
