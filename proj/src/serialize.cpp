#include "ppt/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace ppt {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

double prob_from_log(double log_p) { return std::exp(log_p); }

std::string to_json_line(const Record& r) { return r.dump(); }

std::string csv_field(const Record& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_float()) return format_double(value.get<double>());
    if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
    if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    if (value.is_null()) return "";
    if (value.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (i) out += ';';
            out += csv_field(value[i]);
        }
        return out;
    }
    return value.dump();
}

std::string to_csv(const Record& r) {
    std::string header;
    std::string row;
    bool first = true;
    for (const auto& [key, value] : r.items()) {
        if (!first) {
            header += ',';
            row += ',';
        }
        first = false;
        header += key;
        row += csv_field(value);
    }
    return header + "\n" + row + "\n";
}

}  // namespace ppt
