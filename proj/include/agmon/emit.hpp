// Output document emission. All numbers at 17 significant digits; +inf is
// rendered "inf" in CSV and as the string "inf" in JSON documents.
#pragma once

#include <string>
#include <vector>

#include "agmon/spectral.hpp"
#include "agmon/verifier.hpp"

namespace agmon {

std::string fmt17(double x);
// fmt17 wrapped for JSON: finite -> bare number, non-finite -> quoted string.
std::string json_number(double x);
std::string json_escape(const std::string& s);

std::string spectrum_json(const std::vector<Eigenpair>& eigenpairs);
std::string report_json(const BoundReport& report);

}  // namespace agmon
