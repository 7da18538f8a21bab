#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "axicyl/commands.hpp"
#include "axicyl/config.hpp"
#include "axicyl/error.hpp"

namespace {

struct RunFlags {
    std::string config_path;
    std::string out;
    std::string grid;
    std::uint64_t seed = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--config", f.config_path, "Configuration file (sectioned key = value)");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--seed", f.seed, "Seed for initial data and forcing");
    cmd->add_option("--grid", f.grid, "Grid override NrxNz, e.g. 64x64");
}

axicyl::RunConfig resolve(CLI::App* cmd, const RunFlags& f) {
    axicyl::RunConfig config = f.config_path.empty() ? axicyl::RunConfig{} : axicyl::load_config(f.config_path);
    axicyl::ConfigOverrides o;
    if (cmd->count("--seed")) o.seed = f.seed;
    if (!f.grid.empty()) o.grid = f.grid;
    if (!f.out.empty()) o.output_dir = f.out;
    axicyl::apply_overrides(config, o);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Axisymmetric Navier-Stokes laboratory: simulation and estimate audits"};
    app.require_subcommand(1);

    RunFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "Integrate a configured run and write its series");
    add_run_flags(simulate, sim_flags);

    RunFlags audit_flags;
    std::string audit_run;
    auto* audit = app.add_subcommand("audit", "Audit a configured run or a saved run directory");
    add_run_flags(audit, audit_flags);
    audit->add_option("--run", audit_run, "Saved run directory to audit instead of simulating");

    RunFlags ell_flags;
    auto* elliptic = app.add_subcommand("elliptic-verify", "Stream-ratio convergence table and family audits");
    add_run_flags(elliptic, ell_flags);

    RunFlags mellin_flags;
    auto* mellin = app.add_subcommand("mellin", "Resolvent poles, line suprema and transformed norms");
    add_run_flags(mellin, mellin_flags);

    int d = 12;
    std::string eps1;
    std::string eps2;
    std::string eps0 = "1/100";
    std::string exp_out = "out";
    auto* exponents = app.add_subcommand("exponents", "Exact exponent arithmetic");
    exponents->add_option("--d", d, "Integrability exponent d > 3")->required();
    exponents->add_option("--eps1", eps1, "eps1 as p/q, integer or decimal")->required();
    exponents->add_option("--eps2", eps2, "eps2 as p/q, integer or decimal")->required();
    exponents->add_option("--eps0", eps0, "eps0 as p/q, integer or decimal");
    exponents->add_option("--out", exp_out, "Output directory");

    RunFlags ric_flags;
    auto* riccati = app.add_subcommand("riccati", "Comparison ODE and the small-data check of a run");
    add_run_flags(riccati, ric_flags);

    std::string plot_run;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot", "SVG line plots of a saved run's series");
    plot->add_option("--run", plot_run, "Saved run directory")->required();
    plot->add_option("--out", plot_out, "Directory for the SVG files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : axicyl::exit_config_error;
    }

    std::ostream& out = std::cout;
    return axicyl::guarded(
        [&]() -> int {
            if (*simulate) return axicyl::run_simulate(resolve(simulate, sim_flags), out);
            if (*audit) {
                if (!audit_run.empty()) {
                    const std::optional<std::string> dir =
                        audit_flags.out.empty() ? std::nullopt : std::optional<std::string>(audit_flags.out);
                    return axicyl::run_audit_saved(audit_run, dir, out);
                }
                return axicyl::run_audit(resolve(audit, audit_flags), out);
            }
            if (*elliptic) return axicyl::run_elliptic_verify(resolve(elliptic, ell_flags), out);
            if (*mellin) return axicyl::run_mellin(resolve(mellin, mellin_flags), out);
            if (*exponents) return axicyl::run_exponents(d, eps1, eps2, eps0, exp_out, out);
            if (*riccati) return axicyl::run_riccati(resolve(riccati, ric_flags), out);
            const std::optional<std::string> dir =
                plot_out.empty() ? std::nullopt : std::optional<std::string>(plot_out);
            return axicyl::run_plot(plot_run, dir, out);
        },
        std::cerr);
}
