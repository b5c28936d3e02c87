#include "gittins/errors.hpp"

#include <sstream>

namespace gittins {

namespace {
std::string row_message(std::size_t row, double deviation) {
  std::ostringstream os;
  os << "row " << row << " of P sums to 1 " << (deviation >= 0 ? "+ " : "- ")
     << (deviation >= 0 ? deviation : -deviation);
  return os.str();
}
}  // namespace

NonStochasticRow::NonStochasticRow(std::size_t row, double deviation)
    : InvalidInstance(row_message(row, deviation)), row_(row), deviation_(deviation) {}

NegativeProbability::NegativeProbability(std::size_t i, std::size_t j, double value)
    : InvalidInstance("negative transition probability p(" + std::to_string(i) + "," +
                      std::to_string(j) + ") = " + std::to_string(value)),
      i_(i),
      j_(j) {}

ParseError::ParseError(std::string field, const std::string& detail)
    : InvalidInstance("parse error at \"" + field + "\": " + detail), field_(std::move(field)) {}

DegeneratePivot::DegeneratePivot(std::size_t step, double value)
    : Error("degenerate pivot at step " + std::to_string(step) + " (denominator " +
            std::to_string(value) + ")"),
      step_(step),
      value_(value) {}

}  // namespace gittins
