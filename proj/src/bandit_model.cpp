#include "gittins/bandit_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace gittins {

using nlohmann::json;

BanditInstance validate_instance(BanditInstance raw) {
  const std::size_t n = raw.R.size();
  if (n == 0) throw DimensionMismatch("instance has no states");
  if (raw.P.rows() != n || raw.P.cols() != n) {
    throw DimensionMismatch("P is " + std::to_string(raw.P.rows()) + "x" +
                            std::to_string(raw.P.cols()) + " but R has " + std::to_string(n) +
                            " entries");
  }
  if (!(raw.beta > 0.0 && raw.beta <= 1.0)) {
    throw BadDiscount("discount factor must lie in (0, 1], got " + std::to_string(raw.beta));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(raw.R[i])) {
      throw NonFiniteValue("R[" + std::to_string(i + 1) + "] is not finite");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double p = raw.P(i, j);
      if (!std::isfinite(p)) {
        throw NonFiniteValue("P(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") is not finite");
      }
      if (p < 0.0) throw NegativeProbability(i + 1, j + 1, p);
      sum += p;
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance) throw NonStochasticRow(i + 1, sum - 1.0);
  }
  return raw;
}

StoppingInstance validate_instance(StoppingInstance raw) {
  raw.base = validate_instance(std::move(raw.base));
  if (raw.Q.size() != raw.base.n()) {
    throw DimensionMismatch("Q has " + std::to_string(raw.Q.size()) + " entries, expected " +
                            std::to_string(raw.base.n()));
  }
  for (std::size_t i = 0; i < raw.Q.size(); ++i) {
    if (!std::isfinite(raw.Q[i])) {
      throw NonFiniteValue("Q[" + std::to_string(i + 1) + "] is not finite");
    }
  }
  if (!std::isfinite(raw.nu)) throw NonFiniteValue("nu is not finite");
  return raw;
}

BanditInstance random_instance(const RandomInstanceOptions& opts) {
  if (opts.n == 0) throw InvalidInstance("random_instance: n must be positive");
  if (!(opts.density > 0.0 && opts.density <= 1.0)) {
    throw InvalidInstance("random_instance: density must lie in (0, 1]");
  }
  if (!(opts.reward_min <= opts.reward_max)) {
    throw InvalidInstance("random_instance: empty reward range");
  }
  if (!(opts.beta > 0.0 && opts.beta <= 1.0)) {
    throw BadDiscount("random_instance: discount factor must lie in (0, 1]");
  }

  const std::size_t n = opts.n;
  const auto nonzeros = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(opts.density * static_cast<double>(n))), 1, n);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  BanditInstance inst;
  inst.beta = opts.beta;
  inst.P = Matrix(n, n);
  inst.R.resize(n);

  std::vector<std::size_t> columns(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(columns.begin(), columns.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `nonzeros` slots hold a uniform sample.
    for (std::size_t s = 0; s < nonzeros; ++s) {
      std::uniform_int_distribution<std::size_t> pick(s, n - 1);
      std::swap(columns[s], columns[pick(rng)]);
    }
    auto row = inst.P.row(i);
    double sum = 0.0;
    for (std::size_t s = 0; s < nonzeros; ++s) {
      double u = unit(rng);
      while (u == 0.0) u = unit(rng);
      row[columns[s]] = u;
      sum += u;
    }
    for (double& p : row) p /= sum;
  }

  std::uniform_real_distribution<double> reward(opts.reward_min, opts.reward_max);
  for (double& r : inst.R) {
    r = opts.reward_min == opts.reward_max ? opts.reward_min : reward(rng);
  }
  return validate_instance(std::move(inst));
}

namespace {

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(key, "missing required key");
  return *it;
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field, "expected a number");
  return v.get<double>();
}

Vector as_vector(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field, "expected an array of numbers");
  Vector out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], field + "[" + std::to_string(i + 1) + "]"));
  }
  return out;
}

Matrix as_matrix(const json& v, std::size_t n) {
  if (!v.is_array()) throw ParseError("P", "expected an array of rows");
  if (v.size() != n) {
    throw DimensionMismatch("P has " + std::to_string(v.size()) + " rows, expected " +
                            std::to_string(n));
  }
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string field = "P[" + std::to_string(i + 1) + "]";
    Vector row = as_vector(v[i], field);
    if (row.size() != n) {
      throw DimensionMismatch(field + " has " + std::to_string(row.size()) +
                              " entries, expected " + std::to_string(n));
    }
    std::copy(row.begin(), row.end(), m.row(i).begin());
  }
  return m;
}

json bandit_json(const BanditInstance& inst) {
  json doc;
  doc["n"] = inst.n();
  doc["beta"] = inst.beta;
  json rows = json::array();
  for (std::size_t i = 0; i < inst.P.rows(); ++i) {
    auto r = inst.P.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  doc["P"] = std::move(rows);
  doc["R"] = inst.R;
  return doc;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

AnyInstance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!doc.is_object()) throw ParseError("<document>", "expected a JSON object");

  const json& jn = require(doc, "n");
  if (!jn.is_number_integer() || jn.get<long long>() < 1) {
    throw ParseError("n", "expected a positive integer");
  }
  const auto n = static_cast<std::size_t>(jn.get<long long>());

  BanditInstance base;
  base.beta = as_number(require(doc, "beta"), "beta");
  base.P = as_matrix(require(doc, "P"), n);
  base.R = as_vector(require(doc, "R"), "R");
  if (base.R.size() != n) {
    throw DimensionMismatch("R has " + std::to_string(base.R.size()) + " entries, expected " +
                            std::to_string(n));
  }

  if (!doc.contains("Q")) {
    if (doc.contains("nu")) throw ParseError("nu", "\"nu\" given without \"Q\"");
    return validate_instance(std::move(base));
  }
  StoppingInstance stop;
  stop.base = std::move(base);
  stop.Q = as_vector(doc["Q"], "Q");
  if (doc.contains("nu")) stop.nu = as_number(doc["nu"], "nu");
  return validate_instance(std::move(stop));
}

AnyInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("<file>", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

BanditInstance load_bandit(const std::filesystem::path& path) {
  AnyInstance any = load_instance(path);
  if (auto* b = std::get_if<BanditInstance>(&any)) return std::move(*b);
  return std::move(std::get<StoppingInstance>(any).base);
}

StoppingInstance load_stopping(const std::filesystem::path& path) {
  AnyInstance any = load_instance(path);
  if (auto* s = std::get_if<StoppingInstance>(&any)) return std::move(*s);
  throw ParseError("Q", "stopping instance requires terminal rewards");
}

std::string to_json(const BanditInstance& inst) { return bandit_json(inst).dump(); }

std::string to_json(const StoppingInstance& inst) {
  json doc = bandit_json(inst.base);
  doc["Q"] = inst.Q;
  doc["nu"] = inst.nu;
  return doc.dump();
}

void save_instance(const BanditInstance& inst, const std::filesystem::path& path) {
  write_file(path, to_json(inst));
}

void save_instance(const StoppingInstance& inst, const std::filesystem::path& path) {
  write_file(path, to_json(inst));
}

StateSet make_set(std::size_t n, std::initializer_list<std::size_t> members) {
  StateSet s(n, false);
  for (std::size_t m : members) s.at(m) = true;
  return s;
}

std::size_t set_size(const StateSet& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
}

}  // namespace gittins
