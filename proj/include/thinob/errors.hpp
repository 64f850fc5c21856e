#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace thinob {

/// Base of every error raised by the library. `code()` is a stable short tag
/// used by the CLI to pick an exit status and by reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* code() const noexcept = 0;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "invalid-parameter"; }
};

/// A field or integrand produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double x1, double x2)
      : Error(what + " at (" + std::to_string(x1) + ", " + std::to_string(x2) + ")"), x1_(x1), x2_(x2) {}
  const char* code() const noexcept override { return "evaluation-error"; }
  double x1() const noexcept { return x1_; }
  double x2() const noexcept { return x2_; }

 private:
  double x1_;
  double x2_;
};

class UnsupportedRepresentation : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "unsupported-representation"; }
};

/// Flux is not in the equilibrated set required by the basic majorant.
class NotEquilibrated : public Error {
 public:
  NotEquilibrated(const std::string& what, double div_plus, double div_minus, double jump_residual)
      : Error(what), div_plus_(div_plus), div_minus_(div_minus), jump_residual_(jump_residual) {}
  const char* code() const noexcept override { return "not-equilibrated"; }
  double divergence_plus() const noexcept { return div_plus_; }
  double divergence_minus() const noexcept { return div_minus_; }
  double jump_residual() const noexcept { return jump_residual_; }

 private:
  double div_plus_;
  double div_minus_;
  double jump_residual_;
};

class IncompleteConstants : public Error {
 public:
  explicit IncompleteConstants(std::vector<std::string> missing);
  const char* code() const noexcept override { return "incomplete-constants"; }
  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  std::vector<std::string> missing_;
};

/// A zero-mean precondition does not hold; carries the measured means.
class ConditionViolation : public Error {
 public:
  ConditionViolation(const std::string& what, std::vector<std::pair<std::string, double>> measured)
      : Error(what), measured_(std::move(measured)) {}
  const char* code() const noexcept override { return "condition-violation"; }
  const std::vector<std::pair<std::string, double>>& measured() const noexcept { return measured_; }

 private:
  std::vector<std::pair<std::string, double>> measured_;
};

class Inadmissible : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "inadmissible"; }
};

/// Broken internal guarantee (e.g. a minimization step increased the bound).
class InternalDefect : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "internal-defect"; }
};

}  // namespace thinob
