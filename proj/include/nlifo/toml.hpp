#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nlifo::toml {

// Minimal TOML reader covering what the config schema needs: [section]
// headers, comments, booleans, numbers, strings, and flat arrays of numbers
// or strings. '.' is always the decimal separator.

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Value = std::variant<bool, double, std::string, std::vector<double>,
                           std::vector<std::string>>;

struct Document {
    // section -> key -> value, insertion order kept for dumping
    std::map<std::string, std::map<std::string, Value>> sections;
    std::vector<std::string> section_order;
    std::map<std::string, std::vector<std::string>> key_order;

    bool has(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key) const;
    double number_or(const std::string& section, const std::string& key, double fallback) const;
    bool boolean(const std::string& section, const std::string& key, bool fallback) const;
    std::string text(const std::string& section, const std::string& key,
                     const std::string& fallback = "") const;
    std::vector<double> numbers(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, Value v);
    std::string dump() const;
};

Document parse(const std::string& content, const std::string& origin = "<string>");
Document parse_file(const std::string& path);

std::string format_number(double v);

}  // namespace nlifo::toml
