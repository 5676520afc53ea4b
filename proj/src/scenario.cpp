#include "rslab/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rslab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ScenarioError("line " + std::to_string(lineno) + ": expected 'key = value'",
                                lineno);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ScenarioError("line " + std::to_string(lineno) + ": empty key or value", lineno,
                                key);
        if (sc.raw.count(key))
            throw ScenarioError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'",
                                lineno, key);
        sc.raw[key] = value;
        sc.lines[key] = lineno;
    }
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string Scenario::get_string(const std::string& key) const {
    auto it = raw.find(key);
    if (it == raw.end()) throw ScenarioError("missing required key '" + key + "'", 0, key);
    return it->second;
}

std::string Scenario::get_string(const std::string& key, const std::string& fallback) const {
    auto it = raw.find(key);
    return it == raw.end() ? fallback : it->second;
}

double Scenario::get_number(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ScenarioError("key '" + key + "' (line " +
                                std::to_string(lines.count(key) ? lines.at(key) : 0) +
                                "): not a number: " + v,
                            lines.count(key) ? lines.at(key) : 0, key);
    }
}

double Scenario::get_number(const std::string& key, double fallback) const {
    return has(key) ? get_number(key) : fallback;
}

long Scenario::get_integer(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const double x = get_number(key);
    return static_cast<long>(x);
}

std::vector<double> Scenario::get_numbers(const std::string& key,
                                          const std::vector<double>& fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& item : split_list(get_string(key))) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ScenarioError("key '" + key + "': not a number: " + item,
                                lines.count(key) ? lines.at(key) : 0, key);
        }
    }
    return out;
}

std::vector<std::string> Scenario::get_strings(const std::string& key) const {
    if (!has(key)) return {};
    return split_list(get_string(key));
}

RotSymSpace Scenario::make_space() const {
    const int m = static_cast<int>(get_number("space.m"));
    const double alpha = get_number("space.alpha");
    const double r_max = get_number("space.r_max");
    const std::string warp_name = get_string("space.warp", "euclidean");
    const std::string density_name = get_string("space.density", "const");

    auto params_for = [&](const std::string& prefix,
                          const std::string& name) -> std::vector<double> {
        if (name == "capped_power") return {get_number(prefix + ".beta")};
        if (name == "power_density") return {get_number(prefix + ".q")};
        if (name == "const") return {get_number(prefix + ".value", 1.0)};
        if (name == "polynomial") return get_numbers(prefix + ".coeffs", {});
        return {};
    };

    RadialProfile warp = warp_name == "spline"
                             ? load_spline_profile_csv(get_string("space.warp.csv"), r_max)
                             : make_profile(warp_name, params_for("space.warp", warp_name), r_max);
    RadialProfile density =
        density_name == "spline"
            ? load_spline_profile_csv(get_string("space.density.csv"), r_max)
            : make_profile(density_name, params_for("space.density", density_name), r_max);
    try {
        return RotSymSpace(m, alpha, std::move(warp), std::move(density));
    } catch (const std::domain_error& e) {
        throw ScenarioError(std::string("invalid space: ") + e.what(), 0);
    }
}

RadialProfile Scenario::make_f_profile(double r_max) const {
    const std::string name = get_string("f.preset", "const");
    if (name == "spline") return load_spline_profile_csv(get_string("f.csv"), r_max);
    std::vector<double> params;
    if (name == "const") params = {get_number("f.value", 1.0)};
    if (name == "power_density") params = {get_number("f.q")};
    if (name == "polynomial") params = get_numbers("f.coeffs", {});
    return make_profile(name, params, r_max);
}

}  // namespace rslab
