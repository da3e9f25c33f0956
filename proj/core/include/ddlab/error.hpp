#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ddlab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed user input (pulse instants, tabulated samples, configuration).
/// `index()` names the offending element when there is one.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what,
                           std::optional<std::size_t> index = std::nullopt)
      : std::invalid_argument(what), index_(index) {}

  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  std::optional<std::size_t> index_;
};

/// Adaptive quadrature hit its panel budget before reaching the tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate,
                  double error_bound, std::optional<double> time = std::nullopt)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_bound_(error_bound),
        time_(time) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }
  /// Evaluation time the failure belongs to, when known.
  std::optional<double> time() const noexcept { return time_; }

 private:
  double best_estimate_;
  double error_bound_;
  std::optional<double> time_;
};

/// A root or crossing search ran out of its admissible range.
class RangeExhaustedError : public std::runtime_error {
 public:
  enum class End { lower, upper };

  RangeExhaustedError(const std::string& what, End end)
      : std::runtime_error(what), end_(end) {}

  End end() const noexcept { return end_; }

 private:
  End end_;
};

/// The pulse-count search exceeded its cap.
class SearchExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ddlab
