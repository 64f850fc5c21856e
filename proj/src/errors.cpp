#include "thinob/errors.hpp"

namespace thinob {

namespace {

std::string join_missing(const std::vector<std::string>& names) {
  std::string out = "missing constants:";
  for (const auto& n : names) out += " " + n;
  return out;
}

}  // namespace

IncompleteConstants::IncompleteConstants(std::vector<std::string> missing)
    : Error(join_missing(missing)), missing_(std::move(missing)) {}

}  // namespace thinob
