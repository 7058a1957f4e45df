#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdds {

/// Failure categories; the numeric value doubles as the CLI exit code.
enum class ErrorCategory : int {
  kParse = 2,
  kInvariant = 3,
  kConfig = 4,
};

/// Base for all evaluator errors. `name()` is a stable machine-readable
/// identifier; `category()` maps to the process exit code.
class EvalError : public std::runtime_error {
 public:
  EvalError(ErrorCategory category, std::string_view name, const std::string& message)
      : std::runtime_error(std::string(name) + ": " + message),
        category_(category),
        name_(name) {}

  ErrorCategory category() const noexcept { return category_; }
  std::string_view name() const noexcept { return name_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
  std::string_view name_;
};

struct ParseError : EvalError {
  explicit ParseError(const std::string& m) : EvalError(ErrorCategory::kParse, "ParseError", m) {}
};

struct SchemaError : EvalError {
  explicit SchemaError(const std::string& m) : EvalError(ErrorCategory::kParse, "SchemaError", m) {}
};

struct MonotonicityViolation : EvalError {
  explicit MonotonicityViolation(const std::string& m)
      : EvalError(ErrorCategory::kInvariant, "MonotonicityViolation", m) {}
};

struct StartsOffRoad : EvalError {
  explicit StartsOffRoad(const std::string& m)
      : EvalError(ErrorCategory::kInvariant, "StartsOffRoad", m) {}
};

struct InvalidVerticalPenetration : EvalError {
  explicit InvalidVerticalPenetration(const std::string& m)
      : EvalError(ErrorCategory::kInvariant, "InvalidVerticalPenetration", m) {}
};

struct NegativeDtre : EvalError {
  explicit NegativeDtre(const std::string& m)
      : EvalError(ErrorCategory::kInvariant, "NegativeDtre", m) {}
};

/// Generic domain-invariant violation (bad footprint, bad sample spacing, ...).
struct InvariantError : EvalError {
  explicit InvariantError(const std::string& m)
      : EvalError(ErrorCategory::kInvariant, "InvariantError", m) {}
};

struct ScenarioMismatch : EvalError {
  explicit ScenarioMismatch(const std::string& m)
      : EvalError(ErrorCategory::kConfig, "ScenarioMismatch", m) {}
};

struct EmptyRunSet : EvalError {
  explicit EmptyRunSet(const std::string& m)
      : EvalError(ErrorCategory::kConfig, "EmptyRunSet", m) {}
};

struct WeightSumViolation : EvalError {
  explicit WeightSumViolation(const std::string& m)
      : EvalError(ErrorCategory::kConfig, "WeightSumViolation", m) {}
};

struct LengthMismatch : EvalError {
  explicit LengthMismatch(const std::string& m)
      : EvalError(ErrorCategory::kConfig, "LengthMismatch", m) {}
};

struct UnknownScenario : EvalError {
  explicit UnknownScenario(const std::string& m)
      : EvalError(ErrorCategory::kConfig, "UnknownScenario", m) {}
};

struct SpecInfeasible : EvalError {
  explicit SpecInfeasible(const std::string& m)
      : EvalError(ErrorCategory::kConfig, "SpecInfeasible", m) {}
};

struct ConfigError : EvalError {
  explicit ConfigError(const std::string& m) : EvalError(ErrorCategory::kConfig, "ConfigError", m) {}
};

}  // namespace rdds
