#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kinlap/rational.hpp"

namespace kinlap::cli {

using nlohmann::json;

/// Bad flag, bad file, unknown key or wrong type. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class KeyType { Int, Real, Rational, String, Bool, RealList };

struct KeySpec {
    std::string name;
    KeyType type;
    json default_value;
    std::string help;
};

using Schema = std::vector<KeySpec>;

/// Validated key/value set for one subcommand.
class Config {
public:
    Config() = default;
    Config(std::string command, json values) : command_(std::move(command)), values_(std::move(values)) {}

    const std::string& command() const { return command_; }
    const json& values() const { return values_; }

    long long integer(const std::string& key) const;
    double real(const std::string& key) const;
    Rational rational(const std::string& key) const;
    std::string string(const std::string& key) const;
    bool boolean(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;

    /// Sorted-key compact dump; stable across runs.
    std::string canonical() const;
    /// FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;

private:
    std::string command_;
    json values_;
};

/// Converts a flag string to the key's JSON type.
json parse_flag(const KeySpec& spec, const std::string& text);

/// Checks a JSON value against the key type, returning the normalized value.
json check_value(const KeySpec& spec, const json& value);

/// defaults <- flags <- config file. Unknown keys in the file are rejected.
Config build_config(const std::string& command, const Schema& schema, const std::vector<std::pair<std::string, std::string>>& flags,
                    const std::string& config_path);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace kinlap::cli
