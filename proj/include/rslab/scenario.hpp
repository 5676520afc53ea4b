#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rslab/space.hpp"

namespace rslab {

struct ScenarioError : std::runtime_error {
    int line = 0;
    std::string key;
    ScenarioError(const std::string& msg, int line_, std::string key_ = {})
        : std::runtime_error(msg), line(line_), key(std::move(key_)) {}
};

/// Flat dotted-key scenario description, e.g.
///   space.m = 2
///   space.warp = capped_power
///   space.warp.beta = 0.5
///   checks = cd-scan, neumann, sobolev
/// Lines starting with '#' are comments; lists are comma separated.
struct Scenario {
    std::map<std::string, std::string> raw;
    std::map<std::string, int> lines;

    bool has(const std::string& key) const { return raw.count(key) != 0; }
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_number(const std::string& key) const;
    double get_number(const std::string& key, double fallback) const;
    long get_integer(const std::string& key, long fallback) const;
    std::vector<double> get_numbers(const std::string& key,
                                    const std::vector<double>& fallback) const;
    std::vector<std::string> get_strings(const std::string& key) const;

    RotSymSpace make_space() const;
    RadialProfile make_f_profile(double r_max) const;
};

Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

}  // namespace rslab
