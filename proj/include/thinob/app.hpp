#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "thinob/errors.hpp"
#include "thinob/quadrature.hpp"

namespace thinob {

/// Exit statuses of the command line front end.
enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_evaluation = 3, exit_missing_constant = 4 };

/// Bad configuration; the message starts with the offending key.
class ConfigError : public InvalidParameter {
 public:
  ConfigError(const std::string& key, const std::string& what) : InvalidParameter(key + ": " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct CommandResult {
  int exit_code = exit_ok;
  nlohmann::json report;  // null unless exit_code == exit_ok
  std::string csv;
  std::string message;    // error text for stderr
};

struct ReproduceArgs {
  std::string example = "v1";
  double a = 1.0;
  std::optional<double> eps;
  std::string flux = "gradient_of_v";
  QuadratureConfig quadrature;
};

/// Maps a caught exception to an exit status.
int exit_code_for(const std::exception& e);

CommandResult run_reproduce(const ReproduceArgs& args);
CommandResult run_certify(const nlohmann::json& config);
/// iterations overrides the config's "iterations" entry when given.
CommandResult run_minimize(const nlohmann::json& config, std::optional<int> iterations);

}  // namespace thinob
