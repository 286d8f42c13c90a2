// parse.hpp — flat key=value configuration files with command-line overrides

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tripneg/config.hpp"
#include "tripneg/errors.hpp"
#include "tripneg/presets.hpp"

namespace tripneg {

// Keys in the order they are applied, so K1..K3 refine a uniform K.
inline constexpr std::array<std::string_view, 24> kConfigKeys = {
    "preset", "K", "K1", "K2", "K3", "R", "lambda", "r1", "r2", "r3", "a", "b",
    "c", "phi", "p", "t_end", "samples", "solver", "output", "tol",
    "sweep", "sweep_from", "sweep_to", "sweep_steps"};

using KeyValues = std::map<std::string, std::string, std::less<>>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline bool known_key(std::string_view k) {
    return std::find(kConfigKeys.begin(), kConfigKeys.end(), k) != kConfigKeys.end();
}

inline void add_token(KeyValues& kv, std::string_view token) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
        throw ValidationError(std::string(token), "expected key=value");
    }
    const std::string key(trim(token.substr(0, eq)));
    const std::string value(trim(token.substr(eq + 1)));
    if (!known_key(key)) throw ValidationError(key, "unknown configuration key");
    if (value.empty()) throw ValidationError(key, "missing value");
    kv[key] = value;
}

inline double parse_double(const std::string& key, std::string_view s) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw ValidationError(key, "unparsable number '" + std::string(s) + "'");
    }
    return v;
}

inline std::size_t parse_count(const std::string& key, std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ValidationError(key, "unparsable count '" + std::string(s) + "'");
    }
    return v;
}

inline void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto num = [&] { return parse_double(key, value); };
    auto& sp = cfg.params;
    auto sweep = [&]() -> SweepSpec& {
        if (!cfg.sweep) cfg.sweep = SweepSpec{};
        return *cfg.sweep;
    };
    if (key == "K") sp.k1 = sp.k2 = sp.k3 = num();
    else if (key == "K1") sp.k1 = num();
    else if (key == "K2") sp.k2 = num();
    else if (key == "K3") sp.k3 = num();
    else if (key == "R") sp.rabi = num();
    else if (key == "lambda") sp.lambda = num();
    else if (key == "r1") sp.r1 = num();
    else if (key == "r2") sp.r2 = num();
    else if (key == "r3") sp.r3 = num();
    else if (key == "a") cfg.init.a = num();
    else if (key == "b") cfg.init.b = num();
    else if (key == "c") cfg.init.c = num();
    else if (key == "phi") cfg.init.phi = num();
    else if (key == "p") cfg.init.p = num();
    else if (key == "t_end") cfg.t_end = num();
    else if (key == "samples") cfg.samples = parse_count(key, value);
    else if (key == "solver") cfg.solver = parse_solver(value);
    else if (key == "output") cfg.output = value;
    else if (key == "tol") cfg.tol = num();
    else if (key == "sweep") sweep().variable = parse_sweep_variable(value);
    else if (key == "sweep_from") sweep().from = num();
    else if (key == "sweep_to") sweep().to = num();
    else if (key == "sweep_steps") sweep().steps = parse_count(key, value);
}

}  // namespace detail

// Collects key=value tokens. Lines may hold several whitespace-separated tokens;
// '#' starts a comment. Later tokens overwrite earlier ones.
inline KeyValues parse_key_values(std::string_view text, KeyValues kv = {}) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string token;
        while (words >> token) detail::add_token(kv, token);
    }
    return kv;
}

// Builds the validated config set. `flags` are key=value overrides that win over
// the file text. A preset expands to one config per curve, and every other key is
// applied on top of each of them.
inline std::vector<RunConfig> parse_config(std::string_view text,
                                           const std::vector<std::string>& flags = {}) {
    KeyValues kv = parse_key_values(text);
    for (const auto& f : flags) detail::add_token(kv, f);

    std::vector<RunConfig> configs;
    if (auto it = kv.find("preset"); it != kv.end()) {
        configs = expand_preset(it->second);
    } else {
        configs.emplace_back();
    }
    for (auto key : kConfigKeys) {
        if (key == "preset") continue;
        auto it = kv.find(key);
        if (it == kv.end()) continue;
        for (auto& cfg : configs) {
            // In a multi-curve bundle `output` names the directory for the per-curve files.
            if (key == "output" && configs.size() > 1) {
                cfg.output = it->second + "/" + cfg.output;
                continue;
            }
            detail::apply_key(cfg, it->first, it->second);
        }
    }
    for (const auto& cfg : configs) validate(cfg);
    return configs;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return ss.str();
}

}  // namespace tripneg
