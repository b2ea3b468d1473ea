#pragma once

#include <string>

#include <json.hpp>

namespace ppt {

/// Flat record with a fixed key order: method, m, n, log_p, p, then
/// method-specific diagnostics.
using Record = nlohmann::ordered_json;

/// Shortest decimal string that round-trips the double. Non-finite values
/// print as inf, -inf and nan.
std::string format_double(double v);

/// exp(log_p), which is exactly 0 once log_p is below the underflow limit.
double prob_from_log(double log_p);

/// Single-line JSON object.
std::string to_json_line(const Record& r);

/// Header line plus one value line. Arrays are joined with ';'.
std::string to_csv(const Record& r);

/// CSV field for a scalar JSON value.
std::string csv_field(const Record& value);

}  // namespace ppt
