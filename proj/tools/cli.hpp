#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gittins/bandit_model.hpp"

namespace gittins::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kPreconditionViolation = 3,
  kDisagreement = 4,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

enum class Algo { Fp0, Fp1, Cp, Se, Vwb };

Algo parse_algo(const std::string& name);
std::string algo_name(Algo algo);
IndexResult run_algorithm(Algo algo, const BanditInstance& inst);

struct BenchOptions {
  std::vector<std::size_t> sizes;
  std::vector<Algo> algos;
  std::uint64_t seed = 1;
  std::size_t reps = 1;
  double density = 1.0;
  double beta = 0.9;
  std::size_t vwb_max_n = 500;
};

struct BenchRow {
  std::size_t n = 0;
  Algo algo = Algo::Fp0;
  double seconds = 0.0;
  std::uint64_t muldiv = 0;
  std::uint64_t addsub = 0;
  /// Total flops over n^3, or over n^4 for the VWB algorithm.
  double flops_norm = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<Algo> algos;
};

/// Timing ratio columns: numerator over denominator algorithm.
struct SpeedupColumn {
  const char* name;
  Algo numerator;
  Algo denominator;
};

const std::vector<SpeedupColumn>& speedup_columns();

double median(std::vector<double> values);
BenchReport run_bench(const BenchOptions& opts, std::ostream& log);
void write_bench_csv(const BenchReport& report, std::ostream& out);

}  // namespace gittins::cli
