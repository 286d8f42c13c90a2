// runner.hpp — composes dynamics and entanglement into negativity tables

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tripneg/config.hpp"
#include "tripneg/dynamics.hpp"
#include "tripneg/entanglement.hpp"

namespace tripneg {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TableRow {
    NegativityRecord record;
    double solver_gap{kNaN};      // sup |stepper - resolvent| over the amplitude 4-vector
    double closedform_gap{kNaN};  // max over cuts |closed form - partial transpose|
};

struct Table {
    std::string axis{"t"};  // "t", "phi" or "K"; the record's t field holds this value
    bool dual{false};
    std::vector<TableRow> rows;

    std::vector<NegativityRecord> records() const {
        std::vector<NegativityRecord> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r.record);
        return out;
    }
};

// Negativities of one amplitude state after Werner mixing.
inline NegativityRecord negativities(const AmplitudeState& s, double p, double t = 0.0) {
    NegativityRecord r = tripartite_negativity(werner_mix(assemble_rho(s), p));
    r.t = t;
    return r;
}

namespace detail {

inline TableRow make_row(double axis_value, const AmplitudeState& primary, double p,
                         const AmplitudeState* other) {
    TableRow row;
    row.record = negativities(primary, p, axis_value);
    if (other != nullptr) {
        row.solver_gap = max_abs(to_vector(primary) - to_vector(*other));
        const auto cf = closed_form_negativities(ClosedFormInputs::from_state(primary, p));
        row.closedform_gap = compare_closed_form(cf, row.record).max_gap;
    }
    return row;
}

inline Table time_table(const RunConfig& cfg, const std::vector<double>& grid) {
    const Generator gen = build_generator(cfg.params);
    const AmplitudeState init = AmplitudeState::from_initial(cfg.init);
    Table table;
    table.dual = cfg.solver == SolverChoice::both;
    table.rows.reserve(grid.size());

    Trajectory primary;
    Trajectory secondary;
    if (cfg.solver == SolverChoice::stepper) {
        primary = evolve_stepper(gen, init, grid, {.tol = cfg.tol});
    } else {
        primary = evolve_resolvent(gen, init, grid);
        if (table.dual) secondary = evolve_stepper(gen, init, grid, {.tol = cfg.tol});
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        table.rows.push_back(make_row(grid[i], primary.states[i], cfg.init.p,
                                      table.dual ? &secondary.states[i] : nullptr));
    }
    return table;
}

// Amplitudes at t_end for one parameter point, by the configured solver(s).
inline TableRow point_row(const RunConfig& cfg, double axis_value) {
    const Generator gen = build_generator(cfg.params);
    const AmplitudeState init = AmplitudeState::from_initial(cfg.init);
    const std::vector<double> grid{0.0, cfg.t_end};
    if (cfg.solver == SolverChoice::stepper) {
        const auto tr = evolve_stepper(gen, init, grid, {.tol = cfg.tol});
        return make_row(axis_value, tr.states.back(), cfg.init.p, nullptr);
    }
    const auto tr = evolve_resolvent(gen, init, grid);
    if (cfg.solver == SolverChoice::both) {
        const auto st = evolve_stepper(gen, init, grid, {.tol = cfg.tol});
        return make_row(axis_value, tr.states.back(), cfg.init.p, &st.states.back());
    }
    return make_row(axis_value, tr.states.back(), cfg.init.p, nullptr);
}

}  // namespace detail

// Evolves, assembles, mixes and measures every sample of the configured run.
// Nothing is written here; a failure leaves no partial output behind.
inline Table run(const RunConfig& cfg) {
    validate(cfg);
    if (!cfg.sweep) return detail::time_table(cfg, uniform_grid(cfg.t_end, cfg.samples));

    const SweepSpec& sw = *cfg.sweep;
    const auto values = uniform_grid(sw.to, sw.steps, sw.from);
    if (sw.variable == SweepVariable::time) {
        return detail::time_table(cfg, values);
    }

    Table table;
    table.axis = sw.variable == SweepVariable::phi ? "phi" : "K";
    table.dual = cfg.solver == SolverChoice::both;
    table.rows.reserve(values.size());
    for (double v : values) {
        RunConfig point = cfg;
        point.sweep.reset();
        if (sw.variable == SweepVariable::phi) {
            point.init.phi = v;
        } else {
            point.params.k1 = point.params.k2 = point.params.k3 = v;
        }
        table.rows.push_back(detail::point_row(point, v));
    }
    return table;
}

}  // namespace tripneg
