#pragma once

// JSON form of scan reports. Every integer is written as a decimal string.

#include <json.hpp>

#include "subscan/scan.hpp"

namespace subscan {

inline constexpr const char* kSchemaVersion = "1";

nlohmann::json certificate_to_json(const RootCertificate& cert);
RootCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ScanReport& report);
/// Throws InputError on malformed documents.
ScanReport report_from_json(const nlohmann::json& j);

}  // namespace subscan
