#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace blindspot {

// Plain-text configuration: one `key = value` per line, '#' comments.
class KeyValueConfig {
public:
    KeyValueConfig() = default;
    explicit KeyValueConfig(std::map<std::string, std::string> values)
        : values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    // Each getter leaves `out` untouched when the key is absent and throws
    // ConfigError naming the key on a malformed value.
    bool get_string(const std::string& key, std::string& out) const;
    bool get_double(const std::string& key, double& out) const;
    bool get_int(const std::string& key, int& out) const;
    bool get_u64(const std::string& key, std::uint64_t& out) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

KeyValueConfig parse_key_value_config(const std::string& text, const std::string& origin);
KeyValueConfig load_key_value_config(const std::string& path);

// Log verbosity from the BLINDSPOT_LOG environment variable:
// error < warn < info < debug. Default is warn.
enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };
LogLevel log_level();
void log_message(LogLevel level, const std::string& msg);

}  // namespace blindspot
