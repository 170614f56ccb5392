#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace kinlap::cli {

namespace {

const json& lookup(const json& values, const std::string& key) {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing config key: " + key);
    return *it;
}

double parse_real_text(const std::string& text) {
    try {
        if (text.find('/') != std::string::npos) return to_double(parse_rational(text));
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + text + "'");
    }
}

}  // namespace

long long Config::integer(const std::string& key) const {
    return lookup(values_, key).get<long long>();
}

double Config::real(const std::string& key) const {
    const json& v = lookup(values_, key);
    if (v.is_string()) return parse_real_text(v.get<std::string>());
    return v.get<double>();
}

Rational Config::rational(const std::string& key) const {
    return parse_rational(lookup(values_, key).get<std::string>());
}

std::string Config::string(const std::string& key) const {
    return lookup(values_, key).get<std::string>();
}

bool Config::boolean(const std::string& key) const {
    return lookup(values_, key).get<bool>();
}

std::vector<double> Config::reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& v : lookup(values_, key)) out.push_back(v.get<double>());
    return out;
}

std::string Config::canonical() const {
    json doc{{"command", command_}, {"values", values_}};
    return doc.dump();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string Config::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
    return buf;
}

json parse_flag(const KeySpec& spec, const std::string& text) {
    switch (spec.type) {
    case KeyType::Int: {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("--" + spec.name + ": not an integer: '" + text + "'");
        }
    }
    case KeyType::Real:
        return parse_real_text(text);
    case KeyType::Rational:
        try {
            return format_rational(parse_rational(text));
        } catch (const std::exception&) {
            throw ConfigError("--" + spec.name + ": not a rational: '" + text + "'");
        }
    case KeyType::String:
        return text;
    case KeyType::Bool:
        if (text == "true" || text == "1") return true;
        if (text == "false" || text == "0") return false;
        throw ConfigError("--" + spec.name + ": expected true or false");
    case KeyType::RealList: {
        json arr = json::array();
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) arr.push_back(parse_real_text(item));
        if (arr.empty()) throw ConfigError("--" + spec.name + ": empty list");
        return arr;
    }
    }
    throw ConfigError("unhandled key type");
}

json check_value(const KeySpec& spec, const json& value) {
    const std::string where = "config key '" + spec.name + "': ";
    switch (spec.type) {
    case KeyType::Int:
        if (!value.is_number_integer()) throw ConfigError(where + "expected an integer");
        return value;
    case KeyType::Real:
        if (value.is_number()) return value.get<double>();
        if (value.is_string()) return parse_real_text(value.get<std::string>());
        throw ConfigError(where + "expected a number");
    case KeyType::Rational:
        if (value.is_number_integer()) return format_rational(Rational(value.get<long long>()));
        if (!value.is_string()) throw ConfigError(where + "expected a \"num/den\" string");
        try {
            return format_rational(parse_rational(value.get<std::string>()));
        } catch (const std::exception&) {
            throw ConfigError(where + "not a rational");
        }
    case KeyType::String:
        if (!value.is_string()) throw ConfigError(where + "expected a string");
        return value;
    case KeyType::Bool:
        if (!value.is_boolean()) throw ConfigError(where + "expected true or false");
        return value;
    case KeyType::RealList: {
        if (!value.is_array() || value.empty()) throw ConfigError(where + "expected a non-empty array of numbers");
        json arr = json::array();
        for (const auto& v : value) {
            if (!v.is_number()) throw ConfigError(where + "expected a non-empty array of numbers");
            arr.push_back(v.get<double>());
        }
        return arr;
    }
    }
    throw ConfigError("unhandled key type");
}

Config build_config(const std::string& command, const Schema& schema,
                    const std::vector<std::pair<std::string, std::string>>& flags, const std::string& config_path) {
    json values = json::object();
    for (const auto& k : schema) values[k.name] = check_value(k, k.default_value);
    auto find = [&](const std::string& name) -> const KeySpec* {
        for (const auto& k : schema)
            if (k.name == name) return &k;
        return nullptr;
    };
    for (const auto& [name, text] : flags) {
        const KeySpec* k = find(name);
        if (!k) throw ConfigError("unknown flag --" + name);
        values[name] = parse_flag(*k, text);
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config file: " + config_path);
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            const KeySpec* k = find(it.key());
            if (!k) throw ConfigError("unknown config key: " + it.key());
            values[it.key()] = check_value(*k, it.value());
        }
    }
    return Config(command, std::move(values));
}

}  // namespace kinlap::cli
