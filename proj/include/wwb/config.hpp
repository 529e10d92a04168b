// Flat key-value run configuration shared by the command-line driver.
// Unknown keys are rejected; every accepted key is listed in key_help().

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace wwb {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class RunConfig {
  public:
    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);

    bool has(const std::string& key) const;

    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    // positive-value requirements
    int get_positive_int(const std::string& key) const;
    double get_positive_double(const std::string& key) const;

    static std::string key_help();

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace wwb
