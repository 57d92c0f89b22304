#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace hybridfd {

// Experiment configuration: flat string key-value pairs with dotted
// namespaces (kernel.epsilon, nodes.nx, ...). Two on-disk formats map onto
// it: a plain `key = value` text file and JSON (nested objects flatten to
// dotted keys, scalar arrays to comma-joined lists). Every lookup is
// recorded so unconsumed (unknown) keys can be rejected after parsing.
class Config {
public:
    Config() = default;
    Config(std::map<std::string, std::string> values, std::filesystem::path base_dir)
        : values_(std::move(values)), base_dir_(std::move(base_dir)) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    const std::filesystem::path& base_dir() const { return base_dir_; }

    std::string get_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end())
            throw validation_error("missing required config key '" + key + "'");
        consumed_.insert(key);
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        return has(key) ? get_string(key) : fallback;
    }

    double get_double(const std::string& key) const { return to_double(key, get_string(key)); }
    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    int get_int(const std::string& key) const {
        const double v = get_double(key);
        const int i = static_cast<int>(std::llround(v));
        if (static_cast<double>(i) != v)
            throw validation_error("config key '" + key + "' must be an integer");
        return i;
    }
    int get_int(const std::string& key, int fallback) const {
        return has(key) ? get_int(key) : fallback;
    }

    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const std::string s = get_string(key);
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw validation_error("config key '" + key + "' must be a nonnegative integer");
        }
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string s = get_string(key);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw validation_error("config key '" + key + "' must be a boolean (true/false)");
    }

    std::vector<double> get_double_list(const std::string& key) const {
        std::vector<double> out;
        for (const std::string& item : split_list(get_string(key)))
            out.push_back(to_double(key, item));
        if (out.empty())
            throw validation_error("config key '" + key + "' must be a nonempty list");
        return out;
    }

    std::vector<int> get_int_list(const std::string& key) const {
        std::vector<int> out;
        for (double v : get_double_list(key)) {
            const int i = static_cast<int>(std::llround(v));
            if (static_cast<double>(i) != v)
                throw validation_error("config key '" + key + "' must list integers");
            out.push_back(i);
        }
        return out;
    }

    std::vector<std::string> get_string_list(const std::string& key) const {
        const auto items = split_list(get_string(key));
        if (items.empty())
            throw validation_error("config key '" + key + "' must be a nonempty list");
        return items;
    }

    // Paths are interpreted relative to the config file's directory.
    std::filesystem::path get_path(const std::string& key) const {
        const std::filesystem::path p = get_string(key);
        return p.is_absolute() ? p : base_dir_ / p;
    }

    // Reject keys nobody asked for — typos must not silently change runs.
    void require_all_consumed() const {
        std::vector<std::string> unknown;
        for (const auto& [key, value] : values_)
            if (consumed_.find(key) == consumed_.end()) unknown.push_back(key);
        if (!unknown.empty()) {
            std::string msg = "unknown config key(s):";
            for (const auto& k : unknown) msg += " '" + k + "'";
            throw validation_error(msg);
        }
    }

    const std::map<std::string, std::string>& raw() const { return values_; }

private:
    static double to_double(const std::string& key, const std::string& s) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size())
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw validation_error("config key '" + key + "' has non-numeric value '" + s + "'");
        }
    }

    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    static std::vector<std::string> split_list(const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    }

    std::map<std::string, std::string> values_;
    std::filesystem::path base_dir_;
    mutable std::set<std::string> consumed_;

    friend Config load_config(const std::filesystem::path&);
};

namespace detail {

inline std::string config_trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Nested JSON flattens to dotted keys; arrays of scalars flatten to
// comma-joined lists so both formats feed the same lookups.
inline void flatten_json(const nlohmann::json& j, const std::string& prefix,
                         std::map<std::string, std::string>& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten_json(value, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    std::string text;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto& v = j[i];
            if (v.is_structured())
                throw validation_error("config array '" + prefix + "' must hold scalars");
            if (i > 0) text += ", ";
            text += v.is_string() ? v.get<std::string>() : v.dump();
        }
    } else {
        text = j.is_string() ? j.get<std::string>() : j.dump();
    }
    if (!out.emplace(prefix, text).second)
        throw validation_error("duplicate config key '" + prefix + "'");
}

} // namespace detail

// Load a config file; `.json` selects the JSON reader, anything else the
// flat `key = value` reader (blank lines and `#` comment lines ignored).
inline Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open config file " + path.string());
    std::map<std::string, std::string> values;
    if (path.extension() == ".json") {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw validation_error("malformed JSON config " + path.string() + ": " + e.what());
        }
        if (!j.is_object())
            throw validation_error("JSON config must be an object: " + path.string());
        detail::flatten_json(j, "", values);
    } else {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = detail::config_trim(line);
            if (t.empty() || t[0] == '#') continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw validation_error(path.string() + ":" + std::to_string(lineno) +
                                       ": expected 'key = value'");
            const std::string key = detail::config_trim(t.substr(0, eq));
            const std::string value = detail::config_trim(t.substr(eq + 1));
            if (key.empty())
                throw validation_error(path.string() + ":" + std::to_string(lineno) +
                                       ": empty config key");
            if (!values.emplace(key, value).second)
                throw validation_error("duplicate config key '" + key + "' in " + path.string());
        }
    }
    return Config(std::move(values), std::filesystem::absolute(path).parent_path());
}

} // namespace hybridfd
