#include "nlifo/toml.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nlifo::toml {

namespace {

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// removes a trailing comment that is not inside a string
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

bool parse_number(const std::string& t, double& out) {
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

Value parse_value(const std::string& raw, const std::string& where) {
    const std::string t = strip(raw);
    if (t.empty()) throw ParseError(where + ": missing value");
    if (t == "true") return true;
    if (t == "false") return false;
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"')
            throw ParseError(where + ": unterminated string");
        return t.substr(1, t.size() - 2);
    }
    if (t.front() == '[') {
        if (t.back() != ']') throw ParseError(where + ": unterminated array");
        std::vector<double> nums;
        std::vector<std::string> strs;
        bool is_string = false;
        std::string inner = t.substr(1, t.size() - 2);
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string it = strip(item);
            if (it.empty()) continue;
            if (it.front() == '"') {
                if (it.size() < 2 || it.back() != '"')
                    throw ParseError(where + ": bad string in array");
                strs.push_back(it.substr(1, it.size() - 2));
                is_string = true;
            } else {
                double v = 0.0;
                if (!parse_number(it, v))
                    throw ParseError(where + ": bad number '" + it + "' in array");
                nums.push_back(v);
            }
        }
        if (is_string && !nums.empty())
            throw ParseError(where + ": mixed array types");
        if (is_string) return strs;
        return nums;
    }
    double v = 0.0;
    if (!parse_number(t, v)) throw ParseError(where + ": bad value '" + t + "'");
    return v;
}

}  // namespace

bool Document::has(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) > 0;
}

double Document::number(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    if (s == sections.end() || !s->second.count(key))
        throw ParseError("missing key [" + section + "] " + key);
    const Value& v = s->second.at(key);
    if (const double* d = std::get_if<double>(&v)) return *d;
    throw ParseError("[" + section + "] " + key + " must be a number");
}

double Document::number_or(const std::string& section, const std::string& key,
                           double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
}

bool Document::boolean(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const Value& v = sections.at(section).at(key);
    if (const bool* b = std::get_if<bool>(&v)) return *b;
    throw ParseError("[" + section + "] " + key + " must be a boolean");
}

std::string Document::text(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    if (!has(section, key)) return fallback;
    const Value& v = sections.at(section).at(key);
    if (const std::string* s = std::get_if<std::string>(&v)) return *s;
    throw ParseError("[" + section + "] " + key + " must be a string");
}

std::vector<double> Document::numbers(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    if (s == sections.end() || !s->second.count(key))
        throw ParseError("missing key [" + section + "] " + key);
    const Value& v = s->second.at(key);
    if (const auto* a = std::get_if<std::vector<double>>(&v)) return *a;
    if (const double* d = std::get_if<double>(&v)) return {*d};
    throw ParseError("[" + section + "] " + key + " must be a number array");
}

void Document::set(const std::string& section, const std::string& key, Value v) {
    if (sections.find(section) == sections.end()) section_order.push_back(section);
    auto& sec = sections[section];
    if (sec.find(key) == sec.end()) key_order[section].push_back(key);
    sec[key] = std::move(v);
}

std::string format_number(double v) {
    // shortest representation that parses back to the same double
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string Document::dump() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& sec : section_order) {
        if (!first) os << "\n";
        first = false;
        os << "[" << sec << "]\n";
        const auto ko = key_order.find(sec);
        if (ko == key_order.end()) continue;
        for (const auto& key : ko->second) {
            const Value& v = sections.at(sec).at(key);
            os << key << " = ";
            if (const bool* b = std::get_if<bool>(&v)) {
                os << (*b ? "true" : "false");
            } else if (const double* d = std::get_if<double>(&v)) {
                os << format_number(*d);
            } else if (const std::string* s = std::get_if<std::string>(&v)) {
                os << '"' << *s << '"';
            } else if (const auto* a = std::get_if<std::vector<double>>(&v)) {
                os << '[';
                for (std::size_t i = 0; i < a->size(); ++i)
                    os << (i ? ", " : "") << format_number((*a)[i]);
                os << ']';
            } else if (const auto* sa = std::get_if<std::vector<std::string>>(&v)) {
                os << '[';
                for (std::size_t i = 0; i < sa->size(); ++i)
                    os << (i ? ", " : "") << '"' << (*sa)[i] << '"';
                os << ']';
            }
            os << "\n";
        }
    }
    return os.str();
}

Document parse(const std::string& content, const std::string& origin) {
    Document doc;
    std::istringstream in(content);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = origin + ":" + std::to_string(lineno);
        std::string t = strip(strip_comment(line));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3)
                throw ParseError(where + ": malformed section header");
            section = strip(t.substr(1, t.size() - 2));
            if (section.empty()) throw ParseError(where + ": empty section name");
            if (doc.sections.find(section) == doc.sections.end()) {
                doc.sections[section];
                doc.section_order.push_back(section);
            }
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError(where + ": expected key = value");
        const std::string key = strip(t.substr(0, eq));
        if (key.empty()) throw ParseError(where + ": empty key");
        if (section.empty()) throw ParseError(where + ": key outside any [section]");
        auto& sec = doc.sections[section];
        if (sec.count(key)) throw ParseError(where + ": duplicate key '" + key + "'");
        sec[key] = parse_value(t.substr(eq + 1), where);
        doc.key_order[section].push_back(key);
    }
    return doc;
}

Document parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

}  // namespace nlifo::toml
