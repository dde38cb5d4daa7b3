#include "blindspot/config.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blindspot/errors.hpp"

namespace blindspot {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

bool KeyValueConfig::get_string(const std::string& key, std::string& out) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return false;
    out = it->second;
    return true;
}

bool KeyValueConfig::get_double(const std::string& key, double& out) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return false;
    try {
        std::size_t used = 0;
        out = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(it->second);
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + it->second);
    }
    return true;
}

bool KeyValueConfig::get_int(const std::string& key, int& out) const {
    double v = 0;
    if (!get_double(key, v)) return false;
    out = static_cast<int>(v);
    return true;
}

bool KeyValueConfig::get_u64(const std::string& key, std::uint64_t& out) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return false;
    try {
        out = std::stoull(it->second);
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for '" + key + "': " + it->second);
    }
    return true;
}

KeyValueConfig parse_key_value_config(const std::string& text, const std::string& origin) {
    std::map<std::string, std::string> values;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' at " + origin + ":" + std::to_string(lineno));
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("empty key at " + origin + ":" + std::to_string(lineno));
        values[key] = value;
    }
    return KeyValueConfig(std::move(values));
}

KeyValueConfig load_key_value_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_key_value_config(ss.str(), path);
}

LogLevel log_level() {
    const char* env = std::getenv("BLINDSPOT_LOG");
    if (!env) return LogLevel::Warn;
    const std::string v(env);
    if (v == "error") return LogLevel::Error;
    if (v == "warn") return LogLevel::Warn;
    if (v == "info") return LogLevel::Info;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
}

void log_message(LogLevel level, const std::string& msg) {
    static const char* names[] = {"error", "warn", "info", "debug"};
    if (static_cast<int>(level) <= static_cast<int>(log_level()))
        std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

}  // namespace blindspot
