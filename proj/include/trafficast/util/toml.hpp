#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace trafficast {

// Minimal TOML subset used by the run configuration: comments, [tables],
// and key = value with integers, floats, booleans, strings, and homogeneous
// arrays of integers or strings. Everything is stored under "table.key".

struct TomlValue {
    std::variant<std::int64_t, double, bool, std::string, std::vector<std::int64_t>,
                 std::vector<std::string>>
        v;

    bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
    bool is_float() const { return std::holds_alternative<double>(v); }
    bool is_bool() const { return std::holds_alternative<bool>(v); }
    bool is_string() const { return std::holds_alternative<std::string>(v); }

    std::int64_t as_int(const std::string& key) const;
    double as_float(const std::string& key) const; // accepts ints too
    bool as_bool(const std::string& key) const;
    const std::string& as_string(const std::string& key) const;
    std::vector<std::int64_t> as_int_array(const std::string& key) const;
    std::vector<std::string> as_string_array(const std::string& key) const;
};

using TomlTable = std::map<std::string, TomlValue>;

/// Parse TOML text. Keys are flattened to "table.key" ("" table for top level).
TomlTable parse_toml(const std::string& text);

/// Parse a TOML file (read_lines + parse_toml).
TomlTable parse_toml_file(const std::string& path);

} // namespace trafficast
