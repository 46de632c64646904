#include "endopriv/experiment/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "endopriv/closed_form.hpp"
#include "endopriv/experiment/config.hpp"
#include "endopriv/experiment/csv.hpp"
#include "endopriv/experiment/plot.hpp"
#include "endopriv/numeric_solver.hpp"

namespace endopriv::experiment {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GlobalOptions {
    std::string config_path;
    std::string out_path;
    std::optional<int> grid;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    std::string csv_input;
};

ExperimentConfig load(const GlobalOptions& g) {
    if (g.config_path.empty()) throw ConfigError("--config is required");
    ExperimentConfig c = load_config(g.config_path);
    if (g.grid) c.solver.grid_points = *g.grid;
    if (g.tol) c.solver.tolerance = *g.tol;
    if (g.seed && c.oracle) c.oracle->seeds = {*g.seed};
    validate_config(c);
    return c;
}

bool use_analytic(const ExperimentConfig& c, const BenefitFunction& benefit,
                  const ValuationDistribution& dist) {
    const bool available = has_closed_form(benefit, dist);
    switch (c.method) {
        case Method::analytic:
            if (!available) throw ConfigError("method 'analytic' but the instance has no closed form");
            return true;
        case Method::numeric: return false;
        case Method::automatic: return available;
    }
    return available;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    f.close();
    if (!f) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string csv_text(const std::vector<CsvRow>& rows) {
    std::ostringstream ss;
    write_csv(ss, rows);
    return ss.str();
}

std::vector<CsvRow> solve_rows(const ExperimentConfig& c) {
    const BenefitFunction benefit = c.benefit.build();
    const ValuationDistribution dist = c.distribution.build();
    const bool analytic = use_analytic(c, benefit, dist);
    const auto prices = c.price_list();
    const SweepResult result =
        sweep(c.market(prices.front()), benefit, dist, prices, c.solver, analytic);
    std::vector<CsvRow> rows;
    for (const auto& row : result.rows) {
        const auto more = to_rows(row.price, analytic ? *row.analytic : row.equilibria);
        rows.insert(rows.end(), more.begin(), more.end());
    }
    return rows;
}

int cmd_solve(const GlobalOptions& g, std::ostream& out) {
    const ExperimentConfig c = load(g);
    if (c.price_list().size() != 1) throw ConfigError("solve needs exactly one price; use sweep");
    const std::string text = csv_text(solve_rows(c));
    if (g.out_path.empty()) {
        out << text;
    } else {
        write_file(g.out_path, text);
    }
    return kExitOk;
}

int cmd_sweep(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
    const ExperimentConfig c = load(g);
    const auto rows = solve_rows(c);
    const std::string text = csv_text(rows);
    const std::string path = !g.out_path.empty() ? g.out_path : c.outputs.csv_path.value_or("");
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
        if (!g.quiet) err << "wrote " << rows.size() << " rows to " << path << '\n';
    }
    if (c.outputs.svg_path) {
        // Plot from what was written, never from the in-memory results.
        std::istringstream written(path.empty() ? text : read_file(path));
        write_file(*c.outputs.svg_path, render_svg(read_csv(written)));
        if (!g.quiet) err << "wrote plot to " << *c.outputs.svg_path << '\n';
    }
    return kExitOk;
}

EquilibriumSet shifted(EquilibriumSet s, double offset) {
    if (offset == 0.0) return s;
    for (auto& p : s.points) p.alpha += offset;
    for (auto& iv : s.intervals) {
        iv.lo += offset;
        iv.hi += offset;
    }
    return s;
}

int cmd_validate(const GlobalOptions& g, std::ostream& out) {
    const ExperimentConfig c = load(g);
    const BenefitFunction benefit = c.benefit.build();
    const ValuationDistribution dist = c.distribution.build();
    const bool closed = has_closed_form(benefit, dist);
    if (!closed && !c.oracle) {
        throw ConfigError("validate needs a closed-form instance or an oracle block");
    }
    const auto prices = c.price_list();
    const SweepResult result =
        sweep(c.market(prices.front()), benefit, dist, prices, c.solver, closed);

    double worst_analytic = 0.0;
    double worst_oracle = 0.0;
    for (const auto& row : result.rows) {
        std::ostringstream line;
        line << "price " << format_number(row.price);
        if (closed) {
            const double d = set_distance(
                shifted(*row.analytic, c.validation.mutate_analytic_offset), row.equilibria);
            worst_analytic = std::max(worst_analytic, d);
            line << " analytic_vs_numeric " << format_number(d);
        }
        if (c.oracle) {
            const MarketConfig market = c.market(row.price);
            for (const auto seed : c.oracle->seeds) {
                const auto oracle = empirical_oracle(market, benefit, dist, c.oracle->n, seed, c.solver);
                const double d = set_distance(row.equilibria, oracle);
                worst_oracle = std::max(worst_oracle, d);
                line << " numeric_vs_oracle[" << seed << "] " << format_number(d);
            }
        }
        if (!g.quiet) out << line.str() << '\n';
    }

    bool ok = true;
    if (closed) {
        const bool pass = worst_analytic <= c.validation.tolerance;
        ok = ok && pass;
        out << "max analytic_vs_numeric " << format_number(worst_analytic) << " tolerance "
            << format_number(c.validation.tolerance) << (pass ? " ok" : " BREACH") << '\n';
    }
    if (c.oracle) {
        const bool pass = worst_oracle <= c.validation.oracle_tolerance;
        ok = ok && pass;
        out << "max numeric_vs_oracle " << format_number(worst_oracle) << " tolerance "
            << format_number(c.validation.oracle_tolerance) << (pass ? " ok" : " BREACH") << '\n';
    }
    return ok ? kExitOk : kExitValidationFailed;
}

int cmd_plot(const GlobalOptions& g, std::ostream& out) {
    std::string input = g.csv_input;
    std::string output = g.out_path;
    if (input.empty() || output.empty()) {
        if (g.config_path.empty()) throw ConfigError("plot needs a CSV input and --out, or --config");
        const ExperimentConfig c = load(g);
        if (input.empty()) input = c.outputs.csv_path.value_or("");
        if (output.empty()) output = c.outputs.svg_path.value_or("");
        if (input.empty()) throw ConfigError("no CSV input: pass one or set outputs.csv_path");
    }
    std::istringstream csv(read_file(input));
    std::vector<CsvRow> rows;
    try {
        rows = read_csv(csv);
    } catch (const std::runtime_error& e) {
        throw IoError(input + ": " + e.what());
    }
    const std::string svg = render_svg(rows);
    if (output.empty()) {
        out << svg;
    } else {
        write_file(output, svg);
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Participation equilibria of data markets with endogenous privacy costs",
                 "endopriv"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--config", g.config_path, "Experiment configuration (JSON)");
    app.add_option("--out", g.out_path, "Output path (CSV for solve/sweep, SVG for plot)");
    app.add_option("--grid", g.grid, "Override solver grid_points");
    app.add_option("--tol", g.tol, "Override solver tolerance");
    app.add_option("--seed", g.seed, "Override oracle seeds with a single seed");
    app.add_flag("--quiet", g.quiet, "Suppress progress and per-price report lines");

    auto* solve = app.add_subcommand("solve", "Equilibria at a single price, CSV on stdout");
    auto* sweep_cmd = app.add_subcommand("sweep", "Equilibria over a price grid");
    auto* validate = app.add_subcommand("validate", "Analytic vs numeric vs oracle discrepancies");
    auto* plot = app.add_subcommand("plot", "Render an SVG from a sweep CSV");
    plot->add_option("csv", g.csv_input, "Sweep CSV to plot");
    for (auto* sub : {solve, sweep_cmd, validate, plot}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (solve->parsed()) return cmd_solve(g, out);
        if (sweep_cmd->parsed()) return cmd_sweep(g, out, err);
        if (validate->parsed()) return cmd_validate(g, out);
        return cmd_plot(g, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const std::exception& e) {
        // Anything else escaping the solvers traces back to input values.
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

}  // namespace endopriv::experiment
