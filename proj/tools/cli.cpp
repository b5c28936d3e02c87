#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gittins/compare.hpp"
#include "gittins/index_baselines.hpp"
#include "gittins/index_fp.hpp"
#include "gittins/oracle.hpp"
#include "gittins/stopping.hpp"

namespace gittins::cli {

namespace {

std::string lower_ext(const std::string& path) {
  auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return {};
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

std::string fmt(double v, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string csv_number(double v) { return fmt(v, 17); }

std::vector<std::size_t> ranks_of(const IndexResult& res) {
  std::vector<std::size_t> rank(res.order.size());
  for (std::size_t k = 0; k < res.order.size(); ++k) rank[res.order[k]] = k + 1;
  return rank;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::size_t n = 0;
  double density = 1.0;
  double beta = 0.9;
  double reward_min = 0.0;
  double reward_max = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  bool stopping = false;
  double q_min = -2.0;
  double q_max = 2.0;
  double nu = 0.0;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  RandomInstanceOptions opts{a.n, a.density, a.reward_min, a.reward_max, a.beta, a.seed};
  BanditInstance inst = random_instance(opts);
  if (!a.stopping) {
    save_instance(inst, a.out);
  } else {
    if (!(a.q_min <= a.q_max)) throw InvalidInstance("empty terminal-reward range");
    StoppingInstance stop{std::move(inst), {}, a.nu};
    // Separate stream so Q does not perturb the bandit part for a given seed.
    std::mt19937_64 rng(a.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> q(a.q_min, a.q_max);
    stop.Q.resize(stop.n());
    for (double& v : stop.Q) v = a.q_min == a.q_max ? a.q_min : q(rng);
    save_instance(validate_instance(std::move(stop)), a.out);
  }
  out << "wrote " << a.out << " (n=" << a.n << ")\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct IndexArgs {
  std::string in;
  std::string algo = "fp0";
  bool flops = false;
  std::string out;
};

int cmd_index(const IndexArgs& a, std::ostream& out) {
  const BanditInstance inst = load_bandit(a.in);
  const Algo algo = parse_algo(a.algo);
  const IndexResult res = run_algorithm(algo, inst);
  const auto rank = ranks_of(res);
  const std::size_t n = inst.n();

  out << std::left << std::setw(8) << "state" << std::setw(22) << "index" << std::setw(6) << "rank";
  if (a.flops) out << std::setw(14) << "muldiv" << std::setw(14) << "addsub";
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << std::left << std::setw(8) << i + 1 << std::setw(22) << fmt(res.index[i]) << std::setw(6)
        << rank[i];
    if (a.flops) out << std::setw(14) << res.flops.muldiv << std::setw(14) << res.flops.addsub;
    out << '\n';
  }

  if (!a.out.empty()) {
    std::ofstream file(a.out);
    if (!file) throw Error("cannot open " + a.out + " for writing");
    const std::string ext = lower_ext(a.out);
    if (ext == "json") {
      nlohmann::json doc;
      doc["algo"] = algo_name(algo);
      doc["n"] = n;
      doc["index"] = res.index;
      std::vector<std::size_t> order;
      for (std::size_t s : res.order) order.push_back(s + 1);
      doc["order"] = order;
      if (a.flops) doc["flops"] = {{"muldiv", res.flops.muldiv}, {"addsub", res.flops.addsub}};
      file << doc.dump(2) << '\n';
    } else if (ext == "csv") {
      file << "state,index,rank";
      if (a.flops) file << ",muldiv,addsub";
      file << '\n';
      for (std::size_t i = 0; i < n; ++i) {
        file << i + 1 << ',' << csv_number(res.index[i]) << ',' << rank[i];
        if (a.flops) file << ',' << res.flops.muldiv << ',' << res.flops.addsub;
        file << '\n';
      }
    } else {
      throw InvalidInstance("--out must end in .csv or .json");
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct StopArgs {
  std::string in;
  std::optional<double> nu;
  bool check_vi = false;
  double vi_tol = 1e-10;
  double vi_gate = 1e-6;
};

int cmd_stop(const StopArgs& a, std::ostream& out) {
  StoppingInstance inst = load_stopping(a.in);
  if (a.nu) inst.nu = *a.nu;
  inst = validate_instance(std::move(inst));
  const StoppingSolution sol = solve_optimal_stopping(inst);
  const std::size_t n = inst.n();

  out << "nu = " << fmt(inst.nu) << '\n';
  out << std::left << std::setw(8) << "state" << std::setw(20) << "rhat" << std::setw(20)
      << "index_hat" << std::setw(10) << "action";
  if (sol.value) out << std::setw(20) << "value";
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << std::left << std::setw(8) << i + 1 << std::setw(20) << fmt(sol.rhat[i]) << std::setw(20)
        << fmt(sol.indexHat[i]) << std::setw(10) << (sol.stopSet[i] ? "stop" : "continue");
    if (sol.value) out << std::setw(20) << fmt((*sol.value)[i]);
    out << '\n';
  }
  out << "stop set = {";
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!sol.stopSet[i]) continue;
    out << (first ? "" : ",") << i + 1;
    first = false;
  }
  out << "}\n";

  if (a.check_vi) {
    if (!sol.value) throw BadDiscount("--check-vi needs beta < 1 (value iteration diverges at beta = 1)");
    const Vector vi = value_iteration(inst, a.vi_tol);
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(vi[i] - (*sol.value)[i]));
    out << "vi_gap = " << fmt(gap, 6) << '\n';
    if (gap > a.vi_gate) {
      out << "value iteration disagrees beyond " << a.vi_gate << '\n';
      return kDisagreement;
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  std::string in;
  double tol = 1e-8;
  bool oracle = false;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const BanditInstance inst = load_bandit(a.in);
  std::vector<Algo> algos{Algo::Fp0};
  if (inst.beta < 1.0) algos.insert(algos.end(), {Algo::Fp1, Algo::Cp, Algo::Se, Algo::Vwb});

  std::vector<IndexResult> results;
  for (Algo algo : algos) results.push_back(run_algorithm(algo, inst));

  bool ok = true;
  double worst = 0.0;
  const IndexResult& ref = results.front();
  out << std::left << std::setw(8) << "algo" << std::setw(16) << "max_rel_dev" << "order\n";
  for (std::size_t x = 0; x < algos.size(); ++x) {
    double dev = 0.0;
    for (std::size_t y = 0; y < algos.size(); ++y) {
      dev = std::max(dev, max_relative_deviation(results[x].index, results[y].index));
    }
    const bool order_ok = orders_agree(results[x].order, ref.order, ref.index, a.tol);
    ok = ok && order_ok && dev <= a.tol;
    worst = std::max(worst, dev);
    out << std::left << std::setw(8) << algo_name(algos[x]) << std::setw(16) << fmt(dev, 3)
        << (order_ok ? "agree" : "DIFFER") << '\n';
  }

  if (a.oracle) {
    if (inst.n() > kBruteForceMaxStates) {
      out << "oracle   skipped (n > " << kBruteForceMaxStates << ")\n";
    } else if (inst.beta >= 1.0) {
      out << "oracle   skipped (beta = 1)\n";
    } else {
      const Vector truth = gittins_bruteforce_all(inst);
      double dev = 0.0;
      for (const auto& r : results) dev = std::max(dev, max_relative_deviation(r.index, truth));
      ok = ok && dev <= a.tol;
      worst = std::max(worst, dev);
      out << std::left << std::setw(8) << "oracle" << std::setw(16) << fmt(dev, 3) << "-\n";
    }
  }

  out << "max deviation = " << fmt(worst, 3) << " (tol " << a.tol << ")\n";
  out << (ok ? "AGREE" : "DISAGREE") << '\n';
  return ok ? kOk : kDisagreement;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string sizes;
  std::string algos = "fp0,fp1,cp,se";
  std::uint64_t seed = 1;
  std::size_t reps = 1;
  double density = 1.0;
  double beta = 0.9;
  std::size_t vwb_max_n = 500;
  std::string out;
};

template <typename T, typename Parse>
std::vector<T> split_list(const std::string& text, Parse parse) {
  std::vector<T> items;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw InvalidInstance("empty item in list \"" + text + "\"");
    items.push_back(parse(tok));
  }
  if (items.empty()) throw InvalidInstance("empty list");
  return items;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchOptions opts;
  opts.sizes = split_list<std::size_t>(a.sizes, [](const std::string& s) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || v < 1) throw InvalidInstance("bad size \"" + s + "\"");
    return static_cast<std::size_t>(v);
  });
  opts.algos = split_list<Algo>(a.algos, parse_algo);
  opts.seed = a.seed;
  opts.reps = a.reps;
  opts.density = a.density;
  opts.beta = a.beta;
  opts.vwb_max_n = a.vwb_max_n;

  const BenchReport report = run_bench(opts, err);
  if (a.out.empty()) {
    write_bench_csv(report, out);
  } else {
    std::ofstream file(a.out);
    if (!file) throw Error("cannot open " + a.out + " for writing");
    write_bench_csv(report, file);
    out << "wrote " << a.out << '\n';
  }
  return kOk;
}

}  // namespace

Algo parse_algo(const std::string& name) {
  static const std::map<std::string, Algo> table{
      {"fp0", Algo::Fp0}, {"fp1", Algo::Fp1}, {"cp", Algo::Cp}, {"se", Algo::Se}, {"vwb", Algo::Vwb}};
  auto it = table.find(name);
  if (it == table.end()) {
    throw InvalidInstance("unknown algorithm \"" + name + "\" (expected fp0, fp1, cp, se or vwb)");
  }
  return it->second;
}

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::Fp0: return "fp0";
    case Algo::Fp1: return "fp1";
    case Algo::Cp: return "cp";
    case Algo::Se: return "se";
    case Algo::Vwb: return "vwb";
  }
  return "?";
}

IndexResult run_algorithm(Algo algo, const BanditInstance& inst) {
  switch (algo) {
    case Algo::Fp0: return fp_compute(inst, false).result;
    case Algo::Fp1: return fp_compute(inst, true).result;
    case Algo::Cp: return cp_compute(inst);
    case Algo::Se: return se_compute(inst);
    case Algo::Vwb: return vwb_compute(inst);
  }
  throw Error("unknown algorithm");
}

const std::vector<SpeedupColumn>& speedup_columns() {
  static const std::vector<SpeedupColumn> cols{
      {"fp1_over_fp0", Algo::Fp1, Algo::Fp0},
      {"cp_over_fp0", Algo::Cp, Algo::Fp0},
      {"se_over_fp0", Algo::Se, Algo::Fp0},
      {"fp1_over_cp", Algo::Fp1, Algo::Cp},
  };
  return cols;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

BenchReport run_bench(const BenchOptions& opts, std::ostream& log) {
  if (opts.reps == 0) throw InvalidInstance("--reps must be positive");
  BenchReport report;
  report.algos = opts.algos;
  for (std::size_t n : opts.sizes) {
    const BanditInstance inst =
        random_instance({n, opts.density, 0.0, 1.0, opts.beta, opts.seed});
    for (Algo algo : opts.algos) {
      if (algo == Algo::Vwb && n > opts.vwb_max_n) {
        log << "skipping vwb at n=" << n << " (above --vwb-max-n " << opts.vwb_max_n << ")\n";
        continue;
      }
      std::vector<double> times;
      OpCounter flops;
      for (std::size_t r = 0; r < opts.reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const IndexResult res = run_algorithm(algo, inst);
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(stop - start).count());
        flops = res.flops;
      }
      const double nd = static_cast<double>(n);
      const double scale = algo == Algo::Vwb ? nd * nd * nd * nd : nd * nd * nd;
      report.rows.push_back({n, algo, median(times), flops.muldiv, flops.addsub,
                             static_cast<double>(flops.total()) / scale});
    }
  }
  return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
  auto ran = [&](Algo a) {
    return std::find(report.algos.begin(), report.algos.end(), a) != report.algos.end();
  };
  std::vector<SpeedupColumn> cols;
  for (const auto& c : speedup_columns()) {
    if (ran(c.numerator) && ran(c.denominator)) cols.push_back(c);
  }

  out << "n,algo,seconds,muldiv,addsub,flops_per_n3";
  for (const auto& c : cols) out << ',' << c.name;
  out << '\n';

  for (const BenchRow& row : report.rows) {
    out << row.n << ',' << algo_name(row.algo) << ',' << csv_number(row.seconds) << ','
        << row.muldiv << ',' << row.addsub << ',' << csv_number(row.flops_norm);
    for (const auto& c : cols) {
      std::optional<double> num, den;
      for (const BenchRow& other : report.rows) {
        if (other.n != row.n) continue;
        if (other.algo == c.numerator) num = other.seconds;
        if (other.algo == c.denominator) den = other.seconds;
      }
      out << ',';
      if (num && den && *den > 0.0) out << csv_number(*num / *den);
    }
    out << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gittins index computation and optimal stopping of Markov chains", "gittins"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* sub_gen = app.add_subcommand("gen", "Generate a random instance file");
  sub_gen->add_option("--n", gen.n, "Number of states")->required()->check(CLI::PositiveNumber);
  sub_gen->add_option("--density", gen.density, "Fraction of nonzero entries per row")
      ->check(CLI::Range(0.0, 1.0));
  sub_gen->add_option("--beta", gen.beta, "Discount factor in (0, 1]");
  sub_gen->add_option("--reward-min", gen.reward_min, "Lower end of the reward range");
  sub_gen->add_option("--reward-max", gen.reward_max, "Upper end of the reward range");
  sub_gen->add_option("--seed", gen.seed, "Random seed");
  sub_gen->add_option("--out", gen.out, "Output JSON path")->required();
  sub_gen->add_flag("--stopping", gen.stopping, "Also draw terminal rewards Q");
  sub_gen->add_option("--q-min", gen.q_min, "Lower end of the terminal-reward range");
  sub_gen->add_option("--q-max", gen.q_max, "Upper end of the terminal-reward range");
  sub_gen->add_option("--nu", gen.nu, "Continuation charge stored with a stopping instance");

  IndexArgs idx;
  auto* sub_index = app.add_subcommand("index", "Compute Gittins indices");
  sub_index->add_option("--in", idx.in, "Instance JSON path")->required();
  sub_index->add_option("--algo", idx.algo, "fp0 | fp1 | cp | se | vwb");
  sub_index->add_flag("--flops", idx.flops, "Report operation counters");
  sub_index->add_option("--out", idx.out, "Write results to .csv or .json");

  StopArgs stop;
  auto* sub_stop = app.add_subcommand("stop", "Solve an optimal stopping problem");
  sub_stop->add_option("--in", stop.in, "Stopping instance JSON path (with Q)")->required();
  sub_stop->add_option("--nu", stop.nu, "Override the continuation charge");
  sub_stop->add_flag("--check-vi", stop.check_vi, "Cross-check against value iteration");
  sub_stop->add_option("--vi-tol", stop.vi_tol, "Value-iteration tolerance");

  CompareArgs cmp;
  auto* sub_compare = app.add_subcommand("compare", "Cross-check all index algorithms");
  sub_compare->add_option("--in", cmp.in, "Instance JSON path")->required();
  sub_compare->add_option("--tol", cmp.tol, "Relative tolerance");
  sub_compare->add_flag("--oracle", cmp.oracle, "Include the brute-force index (n <= 20)");

  BenchArgs bench;
  auto* sub_bench = app.add_subcommand("bench", "Timing and operation-count report as CSV");
  sub_bench->add_option("--sizes", bench.sizes, "Comma-separated state counts")->required();
  sub_bench->add_option("--algos", bench.algos, "Comma-separated subset of fp0,fp1,cp,se,vwb");
  sub_bench->add_option("--seed", bench.seed, "Random seed");
  sub_bench->add_option("--reps", bench.reps, "Repetitions per cell (median reported)")
      ->check(CLI::PositiveNumber);
  sub_bench->add_option("--density", bench.density, "Fraction of nonzero entries per row")
      ->check(CLI::Range(0.0, 1.0));
  sub_bench->add_option("--beta", bench.beta, "Discount factor");
  sub_bench->add_option("--vwb-max-n", bench.vwb_max_n, "Largest n for the n^4 VWB algorithm");
  sub_bench->add_option("--out", bench.out, "Write the CSV here instead of standard output");

  std::vector<const char*> argv{"gittins"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*sub_gen) return cmd_gen(gen, out);
    if (*sub_index) return cmd_index(idx, out);
    if (*sub_stop) return cmd_stop(stop, out);
    if (*sub_compare) return cmd_compare(cmp, out);
    if (*sub_bench) return cmd_bench(bench, out, err);
  } catch (const InvalidInstance& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const BadDiscount& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionViolation;
  } catch (const DegeneratePivot& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionViolation;
  } catch (const SingularMatrix& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionViolation;
  } catch (const InstanceTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace gittins::cli
