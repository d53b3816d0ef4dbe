#include "trafficast/util/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "trafficast/common.hpp"
#include "trafficast/util/csvio.hpp"

namespace trafficast {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// strip a trailing comment that is not inside a string literal
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

bool parse_int(const std::string& s, std::int64_t& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) return false;
    out = v;
    return true;
}

bool parse_float(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size()) return false;
    out = v;
    return true;
}

TomlValue parse_scalar(const std::string& raw, int lineno) {
    std::string s = trim(raw);
    if (s.empty()) throw ValidationError("toml line " + std::to_string(lineno) + ": empty value");
    if (s == "true") return TomlValue{true};
    if (s == "false") return TomlValue{false};
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"')
            throw ValidationError("toml line " + std::to_string(lineno) + ": unterminated string");
        return TomlValue{s.substr(1, s.size() - 2)};
    }
    std::int64_t i;
    if (parse_int(s, i)) return TomlValue{i};
    double d;
    if (parse_float(s, d)) return TomlValue{d};
    throw ValidationError("toml line " + std::to_string(lineno) + ": bad value '" + s + "'");
}

TomlValue parse_array(const std::string& raw, int lineno) {
    std::string s = trim(raw);
    std::string inner = trim(s.substr(1, s.size() - 2));
    std::vector<std::int64_t> ints;
    std::vector<std::string> strs;
    if (inner.empty()) return TomlValue{ints};
    std::stringstream ss(inner);
    std::string item;
    bool any_str = false, any_int = false;
    while (std::getline(ss, item, ',')) {
        TomlValue v = parse_scalar(item, lineno);
        if (v.is_int()) {
            ints.push_back(std::get<std::int64_t>(v.v));
            any_int = true;
        } else if (v.is_string()) {
            strs.push_back(std::get<std::string>(v.v));
            any_str = true;
        } else {
            throw ValidationError("toml line " + std::to_string(lineno) +
                                  ": arrays may hold integers or strings only");
        }
    }
    if (any_str && any_int)
        throw ValidationError("toml line " + std::to_string(lineno) + ": mixed array types");
    if (any_str) return TomlValue{strs};
    return TomlValue{ints};
}

} // namespace

std::int64_t TomlValue::as_int(const std::string& key) const {
    if (!is_int()) throw ValidationError("config key '" + key + "' must be an integer");
    return std::get<std::int64_t>(v);
}

double TomlValue::as_float(const std::string& key) const {
    if (is_int()) return static_cast<double>(std::get<std::int64_t>(v));
    if (!is_float()) throw ValidationError("config key '" + key + "' must be a number");
    return std::get<double>(v);
}

bool TomlValue::as_bool(const std::string& key) const {
    if (!is_bool()) throw ValidationError("config key '" + key + "' must be a boolean");
    return std::get<bool>(v);
}

const std::string& TomlValue::as_string(const std::string& key) const {
    if (!is_string()) throw ValidationError("config key '" + key + "' must be a string");
    return std::get<std::string>(v);
}

std::vector<std::int64_t> TomlValue::as_int_array(const std::string& key) const {
    if (!std::holds_alternative<std::vector<std::int64_t>>(v))
        throw ValidationError("config key '" + key + "' must be an integer array");
    return std::get<std::vector<std::int64_t>>(v);
}

std::vector<std::string> TomlValue::as_string_array(const std::string& key) const {
    if (!std::holds_alternative<std::vector<std::string>>(v))
        throw ValidationError("config key '" + key + "' must be a string array");
    return std::get<std::vector<std::string>>(v);
}

TomlTable parse_toml(const std::string& text) {
    TomlTable table;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string s = trim(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ValidationError("toml line " + std::to_string(lineno) + ": bad table header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty())
                throw ValidationError("toml line " + std::to_string(lineno) + ": empty table name");
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ValidationError("toml line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty())
            throw ValidationError("toml line " + std::to_string(lineno) + ": empty key");
        std::string full = section.empty() ? key : section + "." + key;
        if (table.count(full))
            throw ValidationError("toml line " + std::to_string(lineno) + ": duplicate key '" +
                                  full + "'");
        if (!val.empty() && val.front() == '[') {
            if (val.back() != ']')
                throw ValidationError("toml line " + std::to_string(lineno) +
                                      ": unterminated array");
            table.emplace(full, parse_array(val, lineno));
        } else {
            table.emplace(full, parse_scalar(val, lineno));
        }
    }
    return table;
}

TomlTable parse_toml_file(const std::string& path) {
    std::string text;
    for (const auto& l : read_lines(path)) {
        text += l;
        text += '\n';
    }
    return parse_toml(text);
}

} // namespace trafficast
