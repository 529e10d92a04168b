#include "wwb/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace wwb {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "M",          "N",        "epsilon",       "s",       "seed",
        "dt",         "T",        "scheme",        "degree",  "system",
        "mode",       "tol",      "record_every",  "horizon", "wall_budget",
        "record_actions", "nmax", "fp_tol",
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::string RunConfig::key_help() {
    std::string out;
    for (const auto& k : known_keys()) {
        if (!out.empty()) out += ", ";
        out += k;
    }
    return out;
}

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!known_keys().count(key))
            throw ConfigError("config: unknown key '" + key + "' (known: " + key_help() + ")");
        if (val.empty()) throw ConfigError("config: empty value for key '" + key + "'");
        if (cfg.kv_.count(key)) throw ConfigError("config: duplicate key '" + key + "'");
        cfg.kv_[key] = val;
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return from_string(ss.str());
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string RunConfig::get_string(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("config: missing required key '" + key + "'");
    return it->second;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

int RunConfig::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (!end || *end != '\0')
        throw ConfigError("config: key '" + key + "' is not an integer: '" + v + "'");
    return (int)x;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (!end || *end != '\0')
        throw ConfigError("config: key '" + key + "' is not a number: '" + v + "'");
    return x;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::uint64_t RunConfig::get_seed(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (!end || *end != '\0')
        throw ConfigError("config: key '" + key + "' is not a seed: '" + v + "'");
    return (std::uint64_t)x;
}

int RunConfig::get_positive_int(const std::string& key) const {
    const int v = get_int(key);
    if (v <= 0) throw ConfigError("config: key '" + key + "' must be positive");
    return v;
}

double RunConfig::get_positive_double(const std::string& key) const {
    const double v = get_double(key);
    if (v <= 0) throw ConfigError("config: key '" + key + "' must be positive");
    return v;
}

}  // namespace wwb
