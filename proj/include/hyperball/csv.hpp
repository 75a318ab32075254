// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperball::csv {

// Shortest decimal that reads back to the same double.
std::string format_double(double x);
// RFC-4180 field quoting.
std::string quote(const std::string& field);

class Writer {
public:
    Writer(std::ostream& os, const std::vector<std::string>& header);
    Writer& field(double x);
    Writer& field(long long x);
    Writer& field(const std::string& s);
    void end_row();

private:
    std::ostream& os_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

}  // namespace hyperball::csv
