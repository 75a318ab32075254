// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hyperball::csv {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

Writer::Writer(std::ostream& os, const std::vector<std::string>& header) : os_(os), columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << quote(header[i]);
    os_ << "\r\n";
}

Writer& Writer::field(double x) { return field(format_double(x)); }

Writer& Writer::field(long long x) { return field(std::to_string(x)); }

Writer& Writer::field(const std::string& s) {
    if (in_row_ == columns_) throw std::logic_error("csv: too many fields in row");
    os_ << (in_row_ ? "," : "") << quote(s);
    ++in_row_;
    return *this;
}

void Writer::end_row() {
    if (in_row_ != columns_) throw std::logic_error("csv: row has missing fields");
    os_ << "\r\n";
    in_row_ = 0;
}

}  // namespace hyperball::csv
