// tripneg — command-line driver: run, preset, sweep, validate
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure, 3 I/O error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "tripneg/tripneg.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

struct Inputs {
    std::string config_file;
    std::string solver;
    std::string output;
    std::vector<std::string> overrides;
};

std::vector<tripneg::RunConfig> load(const Inputs& in, std::vector<std::string> extra = {}) {
    const std::string text = in.config_file.empty() ? "" : tripneg::read_text_file(in.config_file);
    std::vector<std::string> flags = std::move(extra);
    flags.insert(flags.end(), in.overrides.begin(), in.overrides.end());
    if (!in.solver.empty()) flags.push_back("solver=" + in.solver);
    if (!in.output.empty()) flags.push_back("output=" + in.output);
    return tripneg::parse_config(text, flags);
}

double max_finite(const tripneg::Table& t, double tripneg::TableRow::*field) {
    double m = 0.0;
    for (const auto& r : t.rows)
        if (std::isfinite(r.*field)) m = std::max(m, r.*field);
    return m;
}

void execute(const std::vector<tripneg::RunConfig>& configs) {
    // Compute everything first so a numerical failure writes no partial bundle.
    std::vector<tripneg::Table> tables;
    tables.reserve(configs.size());
    for (const auto& cfg : configs) tables.push_back(tripneg::run(cfg));

    for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto& cfg = configs[i];
        const auto& table = tables[i];
        tripneg::write_csv(table, cfg.output);
        std::printf("wrote %s  rows=%zu  N3(first)=%.9g", cfg.output.c_str(), table.rows.size(),
                    table.rows.front().record.n3);
        if (table.axis == "t") {
            const auto records = table.records();
            const auto esd = tripneg::detect_esd(records);
            std::printf("  death_intervals=%zu", esd.size());
        }
        if (table.dual) {
            std::printf("  max_solver_gap=%.3g  max_closedform_gap=%.3g",
                        max_finite(table, &tripneg::TableRow::solver_gap),
                        max_finite(table, &tripneg::TableRow::closedform_gap));
        }
        std::printf("\n");
    }
}

void describe(const tripneg::RunConfig& cfg) {
    const auto& p = cfg.params;
    const auto& s = cfg.init;
    std::printf("%s: K=(%g, %g, %g) r=(%.6g, %.6g, %.6g) R=%g lambda=%g regime=%s\n",
                cfg.label.empty() ? "config" : cfg.label.c_str(), p.k1, p.k2, p.k3, p.r1, p.r2,
                p.r3, p.rabi, p.lambda,
                tripneg::to_string(tripneg::coupling_regime(p.rabi, p.lambda)));
    std::printf("  a=%.6g b=%.6g c=%.6g phi=%g p=%g t_end=%g samples=%zu solver=%s output=%s\n", s.a,
                s.b, s.c, s.phi, s.p, cfg.t_end, cfg.samples, tripneg::to_string(cfg.solver),
                cfg.output.c_str());
    if (cfg.sweep) {
        std::printf("  sweep %s over [%g, %g] in %zu steps\n", tripneg::to_string(cfg.sweep->variable),
                    cfg.sweep->from, cfg.sweep->to, cfg.sweep->steps);
    }
}

void add_common(CLI::App* cmd, Inputs& in, bool with_config = true) {
    if (with_config) cmd->add_option("-c,--config", in.config_file, "key=value configuration file");
    cmd->add_option("--solver", in.solver, "stepper | resolvent | both");
    cmd->add_option("overrides", in.overrides, "KEY=VALUE overrides (win over the file)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tripartite negativity of three dipole-coupled atoms in Lorentzian reservoirs"};
    app.require_subcommand(1);

    Inputs run_in, preset_in, sweep_in, validate_in;
    std::string preset_id;
    std::string out_dir;
    bool list_presets = false;

    auto* run_cmd = app.add_subcommand("run", "evolve one configuration and write its CSV");
    add_common(run_cmd, run_in);
    run_cmd->add_option("-o,--output", run_in.output, "CSV output path");

    auto* preset_cmd = app.add_subcommand("preset", "reproduce a figure panel, one CSV per curve");
    preset_cmd->add_option("id", preset_id, "fig1a .. fig4d");
    preset_cmd->add_option("-d,--out-dir", out_dir, "directory for the per-curve CSV files");
    preset_cmd->add_flag("--list", list_presets, "print the preset identifiers");
    add_common(preset_cmd, preset_in, false);

    auto* sweep_cmd = app.add_subcommand("sweep", "sweep phi, K or time (sweep=... keys)");
    add_common(sweep_cmd, sweep_in);
    sweep_cmd->add_option("-o,--output", sweep_in.output, "CSV output path");

    auto* validate_cmd = app.add_subcommand("validate", "check a configuration without running it");
    add_common(validate_cmd, validate_in);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }

    try {
        if (*run_cmd) {
            execute(load(run_in));
        } else if (*preset_cmd) {
            if (list_presets) {
                for (auto id : tripneg::kPresetIds) std::printf("%.*s\n", int(id.size()), id.data());
                return kOk;
            }
            if (preset_id.empty()) throw tripneg::ValidationError("preset", "missing preset id");
            std::vector<std::string> extra{"preset=" + preset_id};
            if (!out_dir.empty()) extra.push_back("output=" + out_dir);
            execute(load(preset_in, extra));
        } else if (*sweep_cmd) {
            const auto configs = load(sweep_in);
            for (const auto& c : configs) {
                if (!c.sweep) {
                    throw tripneg::ValidationError("sweep", "no sweep given (set sweep=phi|K|time)");
                }
            }
            execute(configs);
        } else if (*validate_cmd) {
            for (const auto& c : load(validate_in)) describe(c);
            std::printf("valid\n");
        }
    } catch (const tripneg::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const tripneg::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::logic_error& e) {
        // ValidationError, domain_error, out_of_range, invalid_argument
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
