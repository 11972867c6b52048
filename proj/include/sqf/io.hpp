#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "sqf/errors.hpp"

namespace sqf {

// 17 significant digits round-trip a double exactly
inline std::string format_double17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Ordering prefix file: one prime per line; a blank file is the increasing
// ordering.
inline std::vector<std::uint64_t> load_ordering_prefix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("ordering file: cannot open " + path);
    std::vector<std::uint64_t> prefix;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty()) continue;
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw DomainError("ordering file: line " + std::to_string(lineno) + ": expected a prime, got '" +
                              s + "'");
        prefix.push_back(v);
    }
    return prefix;
}

inline void save_ordering_prefix(const std::string& path, const std::vector<std::uint64_t>& prefix) {
    std::ofstream out(path);
    if (!out) throw DomainError("ordering file: cannot write " + path);
    for (std::uint64_t p : prefix) out << p << '\n';
}

// "x,y" -> (x, y)
inline std::pair<double, double> parse_pair(const std::string& s, const char* what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw DomainError(std::string(what) + ": expected 'x,y', got '" + s + "'");
    try {
        std::size_t used = 0;
        const double a = std::stod(s.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("trailing");
        const std::string rest = s.substr(comma + 1);
        const double b = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("trailing");
        return {a, b};
    } catch (const std::exception&) {
        throw DomainError(std::string(what) + ": expected 'x,y', got '" + s + "'");
    }
}

// key = value lines; '#' starts a comment
inline std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config file: cannot open " + path);
    std::map<std::string, std::string> cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string s = trim(line);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw DomainError("config file: line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw DomainError("config file: line " + std::to_string(lineno) + ": empty key");
        cfg[key] = value;
    }
    return cfg;
}

}  // namespace sqf
