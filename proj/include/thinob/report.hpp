#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "thinob/majorants.hpp"

namespace thinob {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const MajorantReport& report);

/// Serializes with sorted keys, two-space indent and every floating value
/// printed with 17 significant digits, so equal inputs give equal bytes.
/// Throws InvalidParameter on a non-finite number.
std::string write_report(const nlohmann::json& j);

/// "kind,term,value" rows: the value itself, then every term, parameter and
/// the efficiency index when known.
std::string terms_csv(const std::vector<MajorantReport>& reports);

/// Formats x with 17 significant digits.
std::string format_double(double x);

}  // namespace thinob
