#pragma once

/// @file config.hpp
/// @brief Minimal TOML-style configuration: [section] headers, key = value
///        with numbers, booleans, quoted strings and flat arrays.  Keys are
///        addressed as "section.key".  Also: model descriptor files, which
///        describe a system (matrices row-major, constitutive law by name)
///        and experiment configurations.

#include "declab/decay.hpp"
#include "declab/systems.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace declab {

using ConfigValue =
    std::variant<double, bool, std::string, std::vector<double>,
                 std::vector<std::string>>;

class Config {
  public:
    /// Parse file contents; throws std::runtime_error with line info on
    /// malformed input.
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
    std::string str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& fallback) const;
    const std::vector<double>& numbers(const std::string& key) const;

    const std::map<std::string, ConfigValue>& entries() const { return values_; }

  private:
    std::map<std::string, ConfigValue> values_;
};

/// Build a SystemSpec from a descriptor config:
///   [model] name, dim, a0/a1/l = row-major arrays, equilibrium = row-major
///   (dim x k), law = "none" | "cubic-flux" | "euler-pressure",
///   law_component, law params.  Throws std::runtime_error on bad shape.
SystemSpec system_from_config(const Config& cfg);

/// Experiment configuration from [grid]/[data]/[run]/[norms] sections; see
/// README for the key list.  Throws std::runtime_error on invalid values.
ExperimentConfig experiment_from_config(const Config& cfg);

} // namespace declab
