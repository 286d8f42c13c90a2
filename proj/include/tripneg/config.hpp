// config.hpp — run configuration and its validation

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "tripneg/core.hpp"
#include "tripneg/errors.hpp"

namespace tripneg {

enum class SolverChoice { stepper, resolvent, both };

inline const char* to_string(SolverChoice s) {
    switch (s) {
        case SolverChoice::stepper: return "stepper";
        case SolverChoice::resolvent: return "resolvent";
        case SolverChoice::both: return "both";
    }
    return "?";
}

inline SolverChoice parse_solver(std::string_view s) {
    if (s == "stepper") return SolverChoice::stepper;
    if (s == "resolvent") return SolverChoice::resolvent;
    if (s == "both") return SolverChoice::both;
    throw ValidationError("solver", "expected stepper|resolvent|both, got '" + std::string(s) + "'");
}

enum class SweepVariable { time, phi, k_uniform };

inline const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::time: return "time";
        case SweepVariable::phi: return "phi";
        case SweepVariable::k_uniform: return "K";
    }
    return "?";
}

inline SweepVariable parse_sweep_variable(std::string_view s) {
    if (s == "time" || s == "t") return SweepVariable::time;
    if (s == "phi") return SweepVariable::phi;
    if (s == "K" || s == "K-uniform") return SweepVariable::k_uniform;
    throw ValidationError("sweep", "expected time|phi|K, got '" + std::string(s) + "'");
}

// phi and K sweeps evaluate the negativities at t_end for every grid value; a
// time sweep is an ordinary run over [from, to].
struct SweepSpec {
    SweepVariable variable{SweepVariable::phi};
    double from{0.0};
    double to{1.0};
    std::size_t steps{2};

    bool operator==(const SweepSpec&) const = default;
};

struct RunConfig {
    SystemParams params{};
    InitialState init{};
    double t_end{3.0};
    std::size_t samples{2000};
    std::optional<SweepSpec> sweep;
    std::string output{"negativity.csv"};
    SolverChoice solver{SolverChoice::resolvent};
    double tol{1e-9};
    std::string label;  // curve name inside a preset bundle

    bool operator==(const RunConfig&) const = default;
};

inline const RunConfig& validate(const RunConfig& cfg) {
    validate(cfg.params);
    validate(cfg.init);
    if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) {
        throw ValidationError("t_end", "must be a positive number, got " + detail::num(cfg.t_end));
    }
    if (cfg.samples < 2) throw ValidationError("samples", "need at least 2 samples");
    if (!(cfg.tol > 0.0)) throw ValidationError("tol", "must be positive");
    if (cfg.sweep) {
        const auto& s = *cfg.sweep;
        if (!(s.to > s.from) || !std::isfinite(s.from) || !std::isfinite(s.to)) {
            throw ValidationError("sweep_from,sweep_to", "degenerate sweep range [" +
                                                             detail::num(s.from) + ", " +
                                                             detail::num(s.to) + "]");
        }
        if (s.steps < 2) throw ValidationError("sweep_steps", "need at least 2 steps");
        if (s.variable == SweepVariable::time && s.from < 0.0) {
            throw ValidationError("sweep_from", "time sweep must start at t >= 0");
        }
    }
    return cfg;
}

}  // namespace tripneg
