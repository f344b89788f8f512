// Command-line surface over the inventory-network solvers: equilibria,
// trajectories, stability reports, the two-phase network procedure, and
// parameter sweeps. Exit codes: 0 success, 1 usage/config error, 2 solver
// failure.
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invnet/aggregate.hpp"
#include "invnet/chain.hpp"
#include "invnet/config_io.hpp"
#include "invnet/echelon.hpp"
#include "invnet/oracle.hpp"
#include "invnet/parallel.hpp"
#include "invnet/twophase.hpp"

using namespace invnet;

namespace {

// Shortest decimal that round-trips; used for all CSV output.
std::string fmt_full(double v) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

std::string fmt_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return std::string(buf);
}

std::string join_levels(const Vector& levels, int digits) {
    std::string out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i > 0) out += "  ";
        out += fmt_fixed(levels[i], digits);
    }
    return out;
}

double sum(const Vector& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

struct CommonOptions {
    std::string config_path;
    std::string format = "table";
    std::string method = "auto";
    int digits = 3;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_method = false) {
    cmd->add_option("--config", opts.config_path, "Model configuration file")->required();
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"table", "csv"}));
    cmd->add_option("--digits", opts.digits, "Decimal digits in table output")
        ->check(CLI::Range(0, 15));
    if (with_method) {
        cmd->add_option("--method", opts.method, "Equilibrium route selection")
            ->check(CLI::IsMember({"auto", "dense"}));
    }
}

SolveMethod solve_method(const CommonOptions& opts) {
    return opts.method == "dense" ? SolveMethod::dense : SolveMethod::auto_detect;
}

void print_echelon_equilibrium(const EchelonSpec& spec, const EquilibriumReport& eq,
                               bool with_aggregate, const CommonOptions& opts) {
    const bool csv = opts.format == "csv";
    if (csv) {
        std::printf("warehouse,level\n");
        for (std::size_t i = 0; i < eq.levels.size(); ++i) {
            std::printf("%zu,%s\n", i + 1, fmt_full(eq.levels[i]).c_str());
        }
        std::printf("total,%s\n", fmt_full(sum(eq.levels)).c_str());
        if (with_aggregate) {
            std::printf("aggregate,%s\n",
                        fmt_full(aggregated_equilibrium(aggregate_params(spec))).c_str());
        }
        return;
    }
    std::printf("equilibrium levels: %s\n", join_levels(eq.levels, opts.digits).c_str());
    std::printf("total: %s\n", fmt_fixed(sum(eq.levels), opts.digits).c_str());
    if (with_aggregate) {
        const double aggregate = aggregated_equilibrium(aggregate_params(spec));
        std::printf("aggregate equilibrium: %s\n", fmt_fixed(aggregate, opts.digits).c_str());
        std::printf("aggregation gap: %s\n",
                    fmt_fixed(aggregate - sum(eq.levels), opts.digits).c_str());
    }
    std::printf("method: %s%s\n", eq.method.c_str(), eq.dense_fallback ? " (fallback)" : "");
    std::printf("gershgorin bound: %s\n", fmt_fixed(eq.gershgorin_bound, opts.digits).c_str());
    std::printf("stable: %s\n", eq.stable ? "yes" : "no");
    std::printf("positivity guaranteed: %s\n", eq.positivity_guaranteed ? "yes" : "no");
}

int cmd_equilibrium(const CommonOptions& opts, bool with_aggregate) {
    const ParsedConfig config = load_config(opts.config_path);
    switch (config.kind()) {
        case ModelKind::echelon: {
            const EquilibriumReport eq = equilibrium(config.echelon(), solve_method(opts));
            print_echelon_equilibrium(config.echelon(), eq, with_aggregate, opts);
            return 0;
        }
        case ModelKind::chain: {
            if (with_aggregate) throw ConfigError("--aggregate applies to echelon configs only");
            const NewtonResult result = newton_solve(config.chain());
            if (!result.trace.converged) {
                std::fprintf(stderr, "error: newton did not converge: %s\n",
                             result.trace.failure.c_str());
                return 2;
            }
            if (opts.format == "csv") {
                std::printf("echelon,level\n");
                for (std::size_t e = 0; e < result.equilibrium.size(); ++e) {
                    std::printf("%zu,%s\n", e + 1, fmt_full(result.equilibrium[e]).c_str());
                }
            } else {
                std::printf("equilibrium levels: %s\n",
                            join_levels(result.equilibrium, opts.digits).c_str());
                std::printf("newton iterations: %d\n", result.trace.iterations);
                std::printf("residual: %s\n",
                            fmt_full(result.trace.residual_norms.back()).c_str());
                std::printf("within capacity: %s\n", result.trace.within_capacity ? "yes" : "no");
            }
            return 0;
        }
        case ModelKind::full_network:
            throw ConfigError("equilibrium expects an echelon or chain config; use two-phase "
                              "for full networks");
    }
    return 1;
}

int cmd_simulate(const CommonOptions& opts, double t_max, int samples, const Vector& y0_override,
                 bool with_oracle, double step) {
    if (!(t_max > 0.0)) throw ConfigError("--t-max must be positive");
    if (samples < 1) throw ConfigError("--samples must be at least 1");
    const ParsedConfig config = load_config(opts.config_path);
    if (config.kind() == ModelKind::full_network) {
        throw ConfigError("simulate expects an echelon or chain config");
    }

    const std::size_t n = config.kind() == ModelKind::echelon ? config.echelon().size()
                                                              : config.chain().size();
    Vector y0(n, 0.0);
    if (!y0_override.empty()) {
        if (y0_override.size() != n) {
            throw ConfigError("--y0 expects " + std::to_string(n) + " values");
        }
        y0 = y0_override;
    } else if (config.initial_levels) {
        y0 = *config.initial_levels;
    }

    Vector times;
    times.reserve(static_cast<std::size_t>(samples) + 1);
    for (int j = 0; j <= samples; ++j) {
        times.push_back(t_max * static_cast<double>(j) / static_cast<double>(samples));
    }

    TrajectorySeries series;
    std::optional<TrajectorySeries> reference;
    if (config.kind() == ModelKind::echelon) {
        const LinearSystem sys = build_system(config.echelon());
        series = solve_trajectory(sys, y0, times);
        if (with_oracle) {
            Vector tail(times.begin() + 1, times.end());
            const TrajectorySeries integrated = oracle::rk4_at_times(
                [&](double, const Vector& y) {
                    Vector dy = sys.A * y;
                    for (std::size_t i = 0; i < dy.size(); ++i) dy[i] += sys.b[i];
                    return dy;
                },
                y0, tail, step);
            TrajectorySeries padded;
            padded.times = times;
            padded.states.push_back(y0);
            for (const Vector& state : integrated.states) padded.states.push_back(state);
            reference = std::move(padded);
        }
    } else {
        if (with_oracle) throw ConfigError("--oracle applies to echelon configs only");
        Vector tail(times.begin() + 1, times.end());
        const TrajectorySeries integrated = simulate_chain(config.chain(), y0, tail, step);
        series.times = times;
        series.states.push_back(y0);
        for (const Vector& state : integrated.states) series.states.push_back(state);
    }

    std::string header = "t";
    for (std::size_t i = 1; i <= n; ++i) header += ",y" + std::to_string(i);
    if (reference) {
        for (std::size_t i = 1; i <= n; ++i) header += ",rk4_y" + std::to_string(i);
    }
    std::printf("%s\n", header.c_str());
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        std::string row = fmt_full(series.times[k]);
        for (double v : series.states[k]) row += "," + fmt_full(v);
        if (reference) {
            for (double v : reference->states[k]) row += "," + fmt_full(v);
        }
        std::printf("%s\n", row.c_str());
    }
    return 0;
}

int cmd_stability(const CommonOptions& opts) {
    const ParsedConfig config = load_config(opts.config_path);
    switch (config.kind()) {
        case ModelKind::echelon: {
            const LinearSystem sys = build_system(config.echelon());
            const GershgorinReport report = gershgorin(sys.A);
            std::printf("model: echelon (n=%zu)\n", config.echelon().size());
            std::printf("gershgorin bound: %s\n", fmt_full(report.upper_bound).c_str());
            std::printf("stable: %s\n", report.upper_bound < 0.0 ? "yes" : "no");
            const std::vector<bool> positivity = validate_positivity_condition(config.echelon());
            bool all = true;
            std::string flags;
            for (std::size_t i = 0; i < positivity.size(); ++i) {
                all = all && positivity[i];
                flags += positivity[i] ? '+' : '-';
            }
            std::printf("positivity condition (mu_i > lambda_i): %s [%s]\n",
                        all ? "yes" : "no", flags.c_str());
            return 0;
        }
        case ModelKind::chain: {
            const StabilityCertificate cert = kantorovich_certificate(config.chain());
            std::printf("model: chain (m=%zu)\n", config.chain().size());
            std::string flags;
            for (bool ok : cert.condition3.flags) flags += ok ? '+' : '-';
            std::printf("condition (3): %s [%s] (sufficient, not necessary)\n",
                        cert.condition3.satisfied ? "satisfied" : "not satisfied", flags.c_str());
            const NewtonResult solved = newton_solve(config.chain());
            if (solved.trace.converged) {
                const double bound =
                    gershgorin(chain_jacobian(config.chain(), solved.equilibrium).to_dense())
                        .upper_bound;
                std::printf("jacobian gershgorin bound at equilibrium: %s\n",
                            fmt_full(bound).c_str());
            }
            if (!cert.kantorovich.applicable) {
                std::printf("kantorovich certificate: not applicable (condition (3) fails)\n");
            } else {
                std::printf("kantorovich lipschitz M: %s\n",
                            fmt_full(cert.kantorovich.lipschitz).c_str());
                std::printf("kantorovich |F(0)|: %s\n",
                            fmt_full(cert.kantorovich.initial_residual).c_str());
                std::printf("kantorovich inverse bound: %s\n",
                            fmt_full(cert.kantorovich.inverse_bound).c_str());
                std::printf("kantorovich inequality: %s <= 1/16: %s\n",
                            fmt_full(cert.kantorovich.inequality_lhs).c_str(),
                            cert.kantorovich.satisfied ? "yes" : "no");
            }
            return 0;
        }
        case ModelKind::full_network:
            throw ConfigError("stability expects an echelon or chain config");
    }
    return 1;
}

int cmd_two_phase(const CommonOptions& opts, int echelon_1based) {
    const ParsedConfig config = load_config(opts.config_path);
    if (config.kind() != ModelKind::full_network) {
        throw ConfigError("two-phase expects a full-network config");
    }
    const FullNetworkSpec& net = config.network();
    if (echelon_1based != 0 &&
        (echelon_1based < 1 || static_cast<std::size_t>(echelon_1based) > net.size())) {
        throw ConfigError("--echelon must be between 1 and " + std::to_string(net.size()));
    }

    const TwoPhaseResult result = two_phase(net, ExecutionPolicy::serial);
    std::printf("phase 1 chain equilibrium: %s\n",
                join_levels(result.chain_levels, opts.digits).c_str());
    std::printf("newton iterations: %d, residual: %s\n", result.trace.iterations,
                fmt_full(result.trace.residual_norms.back()).c_str());
    std::printf("states handled: %zu (two-phase) vs %zu (full network)\n",
                result.two_phase_state_count, result.full_state_count);
    for (const DisaggregatedEchelon& e : result.echelons) {
        if (echelon_1based != 0 && e.index + 1 != static_cast<std::size_t>(echelon_1based)) {
            continue;
        }
        std::printf("echelon %zu: frozen mu_i=%s lambda_i=%s\n", e.index + 1,
                    fmt_fixed(e.frozen_supply, opts.digits).c_str(),
                    fmt_fixed(e.frozen_demand, opts.digits).c_str());
        std::printf("echelon %zu levels: %s (total %s)\n", e.index + 1,
                    join_levels(e.report.levels, opts.digits).c_str(),
                    fmt_fixed(sum(e.report.levels), opts.digits).c_str());
    }
    return 0;
}

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

SweepAxis parse_axis(const std::string& text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
        throw ConfigError("--vary expects name=v1,v2,... (got '" + text + "')");
    }
    SweepAxis axis;
    axis.name = text.substr(0, eq);
    std::stringstream list(text.substr(eq + 1));
    std::string item;
    while (std::getline(list, item, ',')) {
        try {
            axis.values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("--vary " + axis.name + ": '" + item + "' is not a number");
        }
    }
    if (axis.values.empty()) throw ConfigError("--vary " + axis.name + ": no values given");
    return axis;
}

EchelonSpec apply_sweep_value(const EchelonSpec& base, const std::string& name, double value) {
    EchelonSpec spec = base;
    if (name == "mu") {
        for (auto& w : spec.warehouses) w.max_supply = value;
    } else if (name == "lambda") {
        for (auto& w : spec.warehouses) w.demand = value;
    } else if (name == "gamma") {
        spec.transshipment = uniform_transshipment(spec.size(), value);
    } else if (name == "n") {
        const auto count = static_cast<std::size_t>(value);
        if (static_cast<double>(count) != value || count < 1 || count > base.size()) {
            throw ConfigError("sweep parameter n: must be an integer in [1, " +
                              std::to_string(base.size()) + "]");
        }
        spec.warehouses.resize(count);
        DenseMatrix g(count, count);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < count; ++j) g(i, j) = base.transshipment(i, j);
        spec.transshipment = g;
    } else {
        throw ConfigError("unknown sweep parameter: " + name);
    }
    return spec;
}

int cmd_sweep(const CommonOptions& opts, const std::vector<std::string>& vary,
              const std::string& output) {
    const ParsedConfig config = load_config(opts.config_path);
    if (config.kind() != ModelKind::echelon) {
        throw ConfigError("sweep expects an echelon config");
    }
    const EchelonSpec& base = config.echelon();
    if (vary.empty()) throw ConfigError("sweep needs at least one --vary axis");

    std::vector<SweepAxis> axes;
    for (const std::string& text : vary) axes.push_back(parse_axis(text));
    for (const SweepAxis& axis : axes) {
        apply_sweep_value(base, axis.name, axis.values.front());  // fail fast on unknown names
    }

    std::size_t rows = 1;
    for (const SweepAxis& axis : axes) rows *= axis.values.size();

    const SolveMethod method = solve_method(opts);
    std::vector<std::string> lines(rows);
    // Independent cells; later axes vary fastest, output keeps grid order.
    parallel_for(rows, [&](std::size_t row) {
        std::size_t rest = row;
        std::vector<double> point(axes.size());
        for (std::size_t a = axes.size(); a-- > 0;) {
            point[a] = axes[a].values[rest % axes[a].values.size()];
            rest /= axes[a].values.size();
        }
        EchelonSpec spec = base;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            spec = apply_sweep_value(spec, axes[a].name, point[a]);
        }
        const EquilibriumReport eq = equilibrium(spec, method);
        const double aggregate = aggregated_equilibrium(aggregate_params(spec));
        std::string line;
        for (double v : point) line += fmt_full(v) + ",";
        line += fmt_full(sum(eq.levels)) + "," + fmt_full(aggregate);
        for (std::size_t i = 0; i < base.size(); ++i) {
            line += ",";
            if (i < eq.levels.size()) line += fmt_full(eq.levels[i]);
        }
        lines[row] = std::move(line);
    });

    std::string header;
    for (const SweepAxis& axis : axes) header += axis.name + ",";
    header += "total,aggregate";
    for (std::size_t i = 1; i <= base.size(); ++i) header += ",y" + std::to_string(i);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!output.empty() && output != "-") {
        file.open(output);
        if (!file) throw ConfigError("cannot open output file: " + output);
        out = &file;
    }
    (*out) << header << "\n";
    for (const std::string& line : lines) (*out) << line << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-time inventory network solver"};
    app.require_subcommand(1);

    CommonOptions eq_opts;
    bool with_aggregate = false;
    CLI::App* eq_cmd = app.add_subcommand("equilibrium", "Solve for the equilibrium levels");
    add_common(eq_cmd, eq_opts, /*with_method=*/true);
    eq_cmd->add_flag("--aggregate", with_aggregate, "Also report the aggregated-model value");

    CommonOptions sim_opts;
    double t_max = 0.0;
    int samples = 0;
    Vector y0_override;
    bool with_oracle = false;
    double step = oracle::kDefaultRk4Step;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Sample the inventory trajectory as CSV");
    add_common(sim_cmd, sim_opts);
    sim_cmd->add_option("--t-max", t_max, "Horizon")->required();
    sim_cmd->add_option("--samples", samples, "Number of samples after t = 0")->required();
    sim_cmd->add_option("--y0", y0_override, "Initial levels (overrides the config)")
        ->delimiter(',');
    sim_cmd->add_flag("--oracle", with_oracle, "Add RK4 reference columns");
    sim_cmd->add_option("--step", step, "RK4 step for --oracle and chain simulation");

    CommonOptions stab_opts;
    CLI::App* stab_cmd = app.add_subcommand("stability", "Report stability certificates");
    add_common(stab_cmd, stab_opts);

    CommonOptions tp_opts;
    int echelon_1based = 0;
    CLI::App* tp_cmd =
        app.add_subcommand("two-phase", "Aggregate, solve the chain, disaggregate one echelon");
    add_common(tp_cmd, tp_opts);
    tp_cmd->add_option("--echelon", echelon_1based, "1-based echelon to report (default: all)")
        ->check(CLI::PositiveNumber);

    CommonOptions sweep_opts;
    std::vector<std::string> vary;
    std::string output = "-";
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Equilibrium grid over parameter lists");
    add_common(sweep_cmd, sweep_opts, /*with_method=*/true);
    sweep_cmd->add_option("--vary", vary, "Axis as name=v1,v2,... (repeatable)");
    sweep_cmd->add_option("--output", output, "CSV destination ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (eq_cmd->parsed()) return cmd_equilibrium(eq_opts, with_aggregate);
        if (sim_cmd->parsed())
            return cmd_simulate(sim_opts, t_max, samples, y0_override, with_oracle, step);
        if (stab_cmd->parsed()) return cmd_stability(stab_opts);
        if (tp_cmd->parsed()) return cmd_two_phase(tp_opts, echelon_1based);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, vary, output);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
