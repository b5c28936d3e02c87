#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gittins {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance data that fails validation. Maps to CLI exit status 2.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInstance {
 public:
  using InvalidInstance::InvalidInstance;
};

/// Row `row` (1-based) of P sums to 1 + deviation.
class NonStochasticRow : public InvalidInstance {
 public:
  NonStochasticRow(std::size_t row, double deviation);
  std::size_t row() const { return row_; }
  double deviation() const { return deviation_; }

 private:
  std::size_t row_;
  double deviation_;
};

/// p_ij < 0, indices 1-based.
class NegativeProbability : public InvalidInstance {
 public:
  NegativeProbability(std::size_t i, std::size_t j, double value);
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

class NonFiniteValue : public InvalidInstance {
 public:
  using InvalidInstance::InvalidInstance;
};

/// Malformed or incomplete instance file. `field` names the offending key.
class ParseError : public InvalidInstance {
 public:
  ParseError(std::string field, const std::string& detail);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Discount factor outside the range an algorithm supports.
class BadDiscount : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Pivot denominator vanished at step `step` (1-based).
class DegeneratePivot : public Error {
 public:
  DegeneratePivot(std::size_t step, double value);
  std::size_t step() const { return step_; }
  double value() const { return value_; }

 private:
  std::size_t step_;
  double value_;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace gittins
