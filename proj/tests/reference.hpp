// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

// Reader for tests/fixtures/reference_values.txt (mpmath, 30 significant digits).

#pragma once

#include <complex>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace reference {

struct Row {
    std::vector<double> args;
    std::complex<double> value;
};

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline const std::map<std::string, std::vector<Row>>& table() {
    static const std::map<std::string, std::vector<Row>> t = [] {
        std::map<std::string, std::vector<Row>> out;
        const std::string path = std::string(HYPERBALL_FIXTURE_DIR) + "/reference_values.txt";
        std::ifstream is(path);
        if (!is) throw std::runtime_error("missing fixture file " + path);
        std::string line;
        bool versioned = false;
        while (std::getline(is, line)) {
            if (line.rfind("# hyperball-tfa reference values, version 1", 0) == 0) versioned = true;
            if (line.empty() || line[0] == '#') continue;
            const auto p1 = line.find('|'), p2 = line.find('|', p1 + 1);
            Row r;
            std::istringstream a(line.substr(p1 + 1, p2 - p1 - 1)), v(line.substr(p2 + 1));
            for (double x; a >> x;) r.args.push_back(x);
            double re, im;
            v >> re >> im;
            r.value = {re, im};
            out[trim(line.substr(0, p1))].push_back(r);
        }
        if (!versioned) throw std::runtime_error("fixture file has no version 1 header");
        return out;
    }();
    return t;
}

inline const std::vector<Row>& rows(const std::string& kind) { return table().at(kind); }

}  // namespace reference
