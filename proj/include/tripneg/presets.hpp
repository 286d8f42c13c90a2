// presets.hpp — parameter sets of the published figure panels, one RunConfig per curve

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "tripneg/config.hpp"
#include "tripneg/core.hpp"

namespace tripneg {

inline constexpr std::array<std::string_view, 14> kPresetIds = {
    "fig1a", "fig1b", "fig1c", "fig1d", "fig2a", "fig2b", "fig2c",
    "fig2d", "fig3a", "fig3b", "fig4a", "fig4b", "fig4c", "fig4d"};

inline constexpr double kGoodCavityR = 10.0;
inline constexpr double kBadCavityR = 0.1;
inline constexpr std::array<double, 4> kUniformK = {0.0, 5.0, 10.0, 20.0};
inline constexpr std::array<std::array<double, 3>, 4> kNonUniformK = {
    {{2.0, 5.0, 10.0}, {10.0, 15.0, 20.0}, {2.0, 18.0, 20.0}, {8.0, 12.0, 18.0}}};
inline constexpr std::size_t kDefaultSamples = 2000;
inline constexpr std::size_t kPhaseSweepSteps = 361;

inline bool is_preset(std::string_view id) {
    for (auto p : kPresetIds)
        if (p == id) return true;
    return false;
}

namespace detail {

inline std::string k_label(double k) {
    std::string s = num(k);
    return "K" + s;
}

inline RunConfig base_config(double rabi, double phi, double p, bool uniform_r, double t_end) {
    RunConfig cfg;
    cfg.params.rabi = rabi;
    cfg.params.lambda = 1.0;
    if (uniform_r) {
        cfg.params.r1 = cfg.params.r2 = cfg.params.r3 = 1.0 / std::numbers::sqrt3;
    } else {
        cfg.params.r1 = std::sqrt(0.2);
        cfg.params.r2 = std::sqrt(0.3);
        cfg.params.r3 = std::sqrt(0.5);
    }
    cfg.init = InitialState{1.0 / std::numbers::sqrt3, 1.0 / std::numbers::sqrt3,
                            1.0 / std::numbers::sqrt3, phi, p};
    cfg.t_end = t_end;
    cfg.samples = kDefaultSamples;
    return cfg;
}

inline std::vector<RunConfig> uniform_curves(const RunConfig& base) {
    std::vector<RunConfig> out;
    for (double k : kUniformK) {
        RunConfig c = base;
        c.params.k1 = c.params.k2 = c.params.k3 = k;
        c.label = k_label(k);
        out.push_back(c);
    }
    return out;
}

inline std::vector<RunConfig> non_uniform_curves(const RunConfig& base) {
    std::vector<RunConfig> out;
    for (const auto& k : kNonUniformK) {
        RunConfig c = base;
        c.params.k1 = k[0];
        c.params.k2 = k[1];
        c.params.k3 = k[2];
        c.label = "K" + num(k[0]) + "-" + num(k[1]) + "-" + num(k[2]);
        out.push_back(c);
    }
    return out;
}

}  // namespace detail

// Columns of figs. 1 and 2: uniform r with uniform K, or (sqrt .2, sqrt .3, sqrt .5)
// with the four non-uniform K triples. Rows: phi = 0 and phi = pi. Fig. 3 sweeps phi
// at the end of the default window. Fig. 4 repeats the uniform column at p = 0.7.
// Time windows: good cavity [0, 3] ([0, 10] for fig1c/fig1d), bad cavity [0, 10].
inline std::vector<RunConfig> expand_preset(std::string_view id) {
    using detail::base_config;
    const double pi = std::numbers::pi;
    std::vector<RunConfig> out;
    if (id == "fig1a") out = detail::uniform_curves(base_config(kGoodCavityR, 0.0, 1.0, true, 3.0));
    else if (id == "fig1b") out = detail::non_uniform_curves(base_config(kGoodCavityR, 0.0, 1.0, false, 3.0));
    else if (id == "fig1c") out = detail::uniform_curves(base_config(kGoodCavityR, pi, 1.0, true, 10.0));
    else if (id == "fig1d") out = detail::non_uniform_curves(base_config(kGoodCavityR, pi, 1.0, false, 10.0));
    else if (id == "fig2a") out = detail::uniform_curves(base_config(kBadCavityR, 0.0, 1.0, true, 10.0));
    else if (id == "fig2b") out = detail::non_uniform_curves(base_config(kBadCavityR, 0.0, 1.0, false, 10.0));
    else if (id == "fig2c") out = detail::uniform_curves(base_config(kBadCavityR, pi, 1.0, true, 10.0));
    else if (id == "fig2d") out = detail::non_uniform_curves(base_config(kBadCavityR, pi, 1.0, false, 10.0));
    else if (id == "fig3a" || id == "fig3b") {
        const bool good = id == "fig3a";
        RunConfig base = base_config(good ? kGoodCavityR : kBadCavityR, 0.0, 1.0, true, good ? 3.0 : 10.0);
        base.sweep = SweepSpec{SweepVariable::phi, 0.0, 2.0 * pi, kPhaseSweepSteps};
        out = detail::uniform_curves(base);
    }
    else if (id == "fig4a") out = detail::uniform_curves(base_config(kGoodCavityR, 0.0, 0.7, true, 3.0));
    else if (id == "fig4b") out = detail::uniform_curves(base_config(kGoodCavityR, pi, 0.7, true, 3.0));
    else if (id == "fig4c") out = detail::uniform_curves(base_config(kBadCavityR, 0.0, 0.7, true, 10.0));
    else if (id == "fig4d") out = detail::uniform_curves(base_config(kBadCavityR, pi, 0.7, true, 10.0));
    else throw ValidationError("preset", "unknown preset '" + std::string(id) + "'");

    for (auto& c : out) {
        c.output = std::string(id) + "_" + c.label + ".csv";
        validate(c);
    }
    return out;
}

}  // namespace tripneg
