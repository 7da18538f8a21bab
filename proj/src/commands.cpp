#include "axicyl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "axicyl/auditor.hpp"
#include "axicyl/elliptic.hpp"
#include "axicyl/error.hpp"
#include "axicyl/mellin.hpp"
#include "axicyl/modal.hpp"
#include "axicyl/report_io.hpp"
#include "axicyl/svg_plot.hpp"

namespace axicyl {

namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

/// Order required of the manufactured stream-ratio solution.
constexpr double required_order = 1.9;

bool selected(const RunConfig& config, const AuditReport& r) {
    for (const auto& name : config.audits) {
        if (name == "all" || name == r.id) return true;
        if (name == "explicit" && is_explicit_audit(r.id)) return true;
        if (name == "recorded" && !is_explicit_audit(r.id)) return true;
    }
    return false;
}

void stamp(AuditReport& r, const std::string& grid, std::uint64_t seed) {
    r.metadata["grid"] = grid;
    r.metadata["seed"] = std::to_string(seed);
}

void write_reports(const fs::path& dir, const std::vector<AuditReport>& reports, std::ostream& out) {
    write_text(dir / run_files::report, reports_csv(reports));
    const std::string table = summary_table(reports);
    write_text(dir / run_files::summary, table);
    out << table;
}

std::string csv_header(std::initializer_list<const char*> cells) {
    std::string s;
    for (const char* c : cells) s += (s.empty() ? "" : ",") + std::string(c);
    return s + "\n";
}

ScalarField stream_ratio_of(const ScalarField& omega1) {
    return solve(EllipticProblem{EllipticKind::stream_ratio, omega1});
}

std::vector<AuditReport> elliptic_reports(const ScalarField& omega1, const ScalarField& psi1, double mu) {
    std::vector<AuditReport> out;
    out.push_back(weak_estimate_audit(omega1, psi1));
    for (auto& r : h2_estimates_audit(omega1, psi1)) out.push_back(std::move(r));
    for (auto& r : mixed_weight_audit(omega1, psi1)) out.push_back(std::move(r));
    out.push_back(weighted_third_order_audit(omega1, psi1, mu));
    return out;
}

}  // namespace

int exit_code_for(const Error& error) {
    switch (error.kind()) {
        case ErrorKind::config_error:
        case ErrorKind::io_error:
        case ErrorKind::invalid_argument:
        case ErrorKind::invalid_dimension:
        case ErrorKind::infeasible_parameters:
            return exit_config_error;
        default:
            return exit_numerical_failure;
    }
}

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const Error& e) {
        err << "axicyl: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

Trajectory simulate_config(const RunConfig& config, const std::function<void(const Snapshot&)>& on_snapshot) {
    const GridPtr grid = config.make_grid();
    const State initial = make_initial_state(grid, config.initial);
    const Forcing forcing = make_forcing(grid, config.forcing);
    Trajectory run = simulate(initial, forcing, config.simulation, on_snapshot);
    run.metadata["seed"] = std::to_string(config.initial.seed);
    run.metadata["forcing_seed"] = std::to_string(config.forcing.seed);
    run.metadata["initial"] = std::string(to_string(config.initial.preset)) + " A=" + format_number(config.initial.amplitude);
    run.metadata["forcing"] = std::string(to_string(config.forcing.preset)) + " A=" + format_number(config.forcing.amplitude);
    return run;
}

std::vector<AuditReport> run_audits(const Trajectory& run, const RunConfig& config) {
    std::vector<AuditReport> all = trajectory_audits(run, config.exponents);
    const State& last = run.last.state;
    std::vector<AuditReport> fields = elliptic_reports(last.omega1, last.psi1, config.mu);
    fields.push_back(cfz_embedding_check(last.u1, 2.0, 1.0, 2.0));
    for (auto& r : fields) {
        for (const auto& [k, v] : run.metadata) r.metadata[k] = v;
        r.metadata["t"] = format_number(last.t);
        all.push_back(std::move(r));
    }
    std::vector<AuditReport> out;
    for (auto& r : all) {
        if (selected(config, r)) out.push_back(std::move(r));
    }
    return out;
}

std::vector<AuditReport> elliptic_family_reports(const GridPtr& grid, std::uint64_t seed, double mu, int count) {
    const double R = grid->radius();
    const double a = grid->half_height();
    std::vector<AuditReport> out;
    const auto add = [&](const std::vector<EllipticSample>& family, const char* name, OuterBc bc) {
        for (std::size_t i = 0; i < family.size(); ++i) {
            const ScalarField omega1 = family[i].vorticity.sample(grid, Parity::even, bc);
            const ScalarField psi1 = stream_ratio_of(omega1);
            for (auto& r : elliptic_reports(omega1, psi1, mu)) {
                stamp(r, grid->descriptor(), seed);
                r.metadata["family"] = name;
                r.metadata["member"] = std::to_string(i);
                out.push_back(std::move(r));
            }
        }
    };
    add(random_vorticity_family(R, a, seed, count), "random-vorticity", OuterBc::dirichlet);
    add(axis_vanishing_family(R, a, seed, count), "axis-vanishing", OuterBc::free);
    return out;
}

std::map<std::string, double> worst_ratios(const std::vector<AuditReport>& reports) {
    std::map<std::string, double> worst;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::inapplicable || !std::isfinite(r.ratio)) continue;
        auto [it, fresh] = worst.emplace(r.id, r.ratio);
        if (!fresh) it->second = std::max(it->second, r.ratio);
    }
    return worst;
}

std::vector<ConvergenceRow> elliptic_convergence(double radius, double half_height, int n) {
    const double k = pi / half_height;
    const auto exact = [&](double r, double z) { return (radius * radius - r * r) * std::cos(k * z); };
    const auto rhs = [&](double r, double z) {
        return (8.0 + k * k * (radius * radius - r * r)) * std::cos(k * z);
    };
    std::vector<ConvergenceRow> rows;
    for (int level = 0; level < 3; ++level) {
        const int cells = n << level;
        const GridPtr grid = make_grid(radius, half_height, cells, cells, ZScheme::finite_difference);
        const ScalarField f = ScalarField::sample(grid, Parity::even, OuterBc::free, rhs);
        const SolveResult sol = solve_with_residual(EllipticProblem{EllipticKind::stream_ratio, f});
        double e2 = 0.0;
        for (int j = 0; j < grid->nr(); ++j) {
            for (int q = 0; q < grid->nz(); ++q) {
                const double d = sol.solution(j, q) - exact(grid->r(j), grid->z(q));
                e2 += grid->weight(j) * d * d;
            }
        }
        ConvergenceRow row{cells, std::max(grid->dr(), grid->dz()), std::sqrt(e2), 0.0};
        if (!rows.empty()) row.order = std::log2(rows.back().l2_error / row.l2_error);
        rows.push_back(row);
    }
    return rows;
}

int audit_exit_code(const std::vector<AuditReport>& reports) {
    for (const auto& r : reports) {
        if (r.verdict == Verdict::fail) return exit_audit_failure;
    }
    return exit_ok;
}

int run_simulate(const RunConfig& config, std::ostream& out) {
    const fs::path dir = config.output_dir;
    const int every = config.simulation.snapshot_every;
    const auto on_snapshot = [&](const Snapshot& s) {
        std::ostringstream name;
        name << "step_" << std::setw(7) << std::setfill('0') << s.step << ".csv";
        write_text(dir / run_files::snapshots / name.str(), snapshot_csv(s, false));
    };
    Trajectory run;
    try {
        run = simulate_config(config, every > 0 ? std::function<void(const Snapshot&)>(on_snapshot) : nullptr);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::numerical_failure) {
            Trajectory failed;
            failed.warnings.push_back(e.what());
            write_text(dir / run_files::manifest, manifest_json(config, failed, "numerical_failure"));
        }
        throw;
    }
    const DConstants d = compute_d_constants(run, config.exponents.eps0);
    save_run(config, run, d);
    const Sample& s = run.samples.back();
    out << "simulated " << run.samples.size() - 1 << " steps to t=" << format_number(s.t) << " on "
        << run.grid->descriptor() << '\n'
        << "  |v|_2 = " << format_number(std::sqrt(s.kinetic_sq)) << ", sup|u| = " << format_number(s.swirl_sup)
        << ", X_small = " << format_number(s.x_small) << '\n';
    for (const auto& w : run.warnings) out << "  warning: " << w << '\n';
    out << "wrote " << dir.string() << '\n';
    return exit_ok;
}

int run_audit(const RunConfig& config, std::ostream& out) {
    const int code = run_simulate(config, out);
    if (code != exit_ok) return code;
    return run_audit_saved(config.output_dir, std::nullopt, out);
}

int run_audit_saved(const fs::path& run_dir, const std::optional<std::string>& out_dir, std::ostream& out) {
    const SavedRun saved = load_run(run_dir);
    const auto reports = run_audits(saved.run, saved.config);
    write_reports(out_dir ? fs::path(*out_dir) : run_dir, reports, out);
    return audit_exit_code(reports);
}

int run_elliptic_verify(const RunConfig& config, std::ostream& out) {
    const fs::path dir = config.output_dir;
    const auto rows = elliptic_convergence(config.radius, config.half_height, config.nr);
    std::ostringstream table;
    table << csv_header({"n [1]", "h [L]", "l2_error [L^2.5 T^-1]", "order [1]"});
    out << "manufactured stream ratio, differenced z\n";
    for (const auto& r : rows) {
        table << r.n << ',' << format_number(r.h) << ',' << format_number(r.l2_error) << ',' << format_number(r.order)
              << '\n';
        out << "  n=" << r.n << "  L2 error " << format_number(r.l2_error);
        if (r.order != 0.0) out << "  order " << format_number(r.order);
        out << '\n';
    }
    write_text(dir / "elliptic_convergence.csv", table.str());

    const GridPtr grid = config.make_grid();
    const auto reports = elliptic_family_reports(grid, config.seed(), config.mu);
    write_reports(dir, reports, out);

    std::ostringstream worst;
    worst << csv_header({"id [-]", "worst_ratio [1]"});
    for (const auto& [id, ratio] : worst_ratios(reports)) worst << id << ',' << format_number(ratio) << '\n';
    write_text(dir / "elliptic_worst_ratios.csv", worst.str());

    const bool order_ok = std::all_of(rows.begin() + 1, rows.end(), [](const ConvergenceRow& r) {
        return r.order >= required_order;
    });
    if (!order_ok) out << "convergence order below " << required_order << '\n';
    return order_ok ? audit_exit_code(reports) : exit_audit_failure;
}

int run_mellin(const RunConfig& config, std::ostream& out) {
    const fs::path dir = config.output_dir;
    const auto [p1, p2] = resolvent_poles();
    std::ostringstream poles;
    poles << csv_header({"pole [-]", "re [1]", "im [1]"});
    poles << "1," << format_number(p1.real()) << ',' << format_number(p1.imag()) << '\n';
    poles << "2," << format_number(p2.real()) << ',' << format_number(p2.imag()) << '\n';
    write_text(dir / "mellin_poles.csv", poles.str());
    out << "poles of lambda^2 + 2i lambda + 3: (" << format_number(p1.real()) << ", " << format_number(p1.imag())
        << "i), (" << format_number(p2.real()) << ", " << format_number(p2.imag()) << "i)\n";

    std::ostringstream lines;
    lines << csv_header({"h [1]", "mu [1]", "sup [1]", "argsup [1]", "min_denominator [1]", "far_field [1]"});
    out << "multiplier supremum on Im lambda = h\n";
    for (int i = 1; i <= 9; ++i) {
        const double h = 0.1 * i;
        const LineSupremum s = multiplier_supremum(1.0 - h);
        lines << format_number(h) << ',' << format_number(s.mu) << ',' << format_number(s.sup) << ','
              << format_number(s.argsup) << ',' << format_number(s.min_denominator) << ','
              << format_number(s.far_field) << '\n';
        out << "  h=" << std::setprecision(1) << std::fixed << h << std::defaultfloat << std::setprecision(6)
            << "  sup " << s.sup << '\n';
    }
    write_text(dir / "mellin_lines.csv", lines.str());

    std::ostringstream pars;
    pars << csv_header({"profile [-]", "k [1]", "mu [1]", "tau_side [mixed]", "line_side [mixed]",
                        "direct [mixed]", "transformed [mixed]"});
    double worst_parseval = 0.0;
    double worst_two_way = 0.0;
    for (const auto& p : parseval_profile_family()) {
        for (int k = 0; k <= 2; ++k) {
            for (double mu : {0.1, 0.5, 0.9}) {
                const ParsevalSides s = parseval_sides(p.profile, k, mu);
                const TwoWayNorm t = weighted_norm_two_ways(p.profile, k, mu);
                worst_parseval = std::max(worst_parseval, std::abs(s.tau_side - s.line_side) / s.tau_side);
                if (k <= 1) worst_two_way = std::max(worst_two_way, std::abs(t.direct - t.transformed) / t.direct);
                pars << quote_csv(p.name) << ',' << k << ',' << format_number(mu) << ',' << format_number(s.tau_side)
                     << ',' << format_number(s.line_side) << ',' << format_number(t.direct) << ','
                     << format_number(t.transformed) << '\n';
            }
        }
    }
    write_text(dir / "mellin_parseval.csv", pars.str());
    out << "largest relative Parseval gap " << worst_parseval << ", weighted-norm gap (k <= 1) " << worst_two_way
        << '\n';

    const TauMesh mesh = make_tau_mesh(config.radius);
    AuditReport line = line_estimate_check([](double tau) { return std::exp(-tau * tau); }, config.mu, mesh);
    stamp(line, "tau mesh n=" + std::to_string(mesh.n), config.seed());
    write_reports(dir, {line}, out);
    return audit_exit_code({line});
}

int run_exponents(int d, const std::string& eps1, const std::string& eps2, const std::string& eps0,
                  const std::string& out_dir, std::ostream& out) {
    const ExponentRecord e = exponent_calculator(d, parse_rational(eps1), parse_rational(eps2), parse_rational(eps0));
    const std::pair<const char*, Rational> rows[] = {
        {"eps1", e.eps1}, {"eps2", e.eps2}, {"eps", e.eps},       {"eps0", e.eps0},
        {"theta", e.theta}, {"delta", e.delta}, {"delta0", e.delta0},
    };
    std::ostringstream table;
    table << csv_header({"quantity [-]", "exact [1]", "decimal [1]"});
    out << "d = " << d << '\n';
    for (const auto& [name, q] : rows) {
        const std::string dec = format_number(q.convert_to<double>());
        table << name << ',' << format_rational(q) << ',' << dec << '\n';
        out << "  " << std::left << std::setw(8) << name << std::setw(24) << format_rational(q) << dec << '\n';
    }
    const std::pair<const char*, bool> flags[] = {
        {"theta_positive", e.theta_positive},
        {"upper_restriction", e.upper_restriction},
        {"closing_condition", e.closing_condition},
        {"eps_ratio_condition", e.eps_ratio_condition},
    };
    for (const auto& [name, value] : flags) {
        table << name << ',' << (value ? "true" : "false") << ',' << (value ? 1 : 0) << '\n';
        out << "  " << std::left << std::setw(22) << name << (value ? "true" : "false") << '\n';
    }
    out << std::right;
    write_text(fs::path(out_dir) / "exponents.csv", table.str());
    return exit_ok;
}

int run_riccati(const RunConfig& config, std::ostream& out) {
    const fs::path dir = config.output_dir;
    const double nu = config.simulation.dynamics.nu;
    const auto samples = riccati_surrogate(nu, config.riccati_c0, config.riccati_k0, config.riccati_x0,
                                           config.riccati_t_end, 10000);
    const auto beta = riccati_bound(config.riccati_x0, config.riccati_c0, config.riccati_k0, config.riccati_t_end);
    std::ostringstream table;
    table << csv_header({"t [T]", "x [mixed]"});
    double peak = 0.0;
    for (const auto& s : samples) {
        table << format_number(s.t) << ',' << format_number(s.x) << '\n';
        peak = std::max(peak, s.x);
    }
    write_text(dir / "riccati_surrogate.csv", table.str());

    AuditReport surrogate;
    if (beta) {
        surrogate = explicit_audit("riccati-surrogate", peak, *beta, 0.0);
    } else {
        surrogate = recorded_audit("riccati-surrogate", peak, 0.0);
        surrogate.verdict = Verdict::inapplicable;
        surrogate.metadata["reason"] = "bound-breakdown";
    }
    surrogate.metadata["nu"] = format_number(nu);
    surrogate.metadata["c0"] = format_number(config.riccati_c0);
    surrogate.metadata["k0"] = format_number(config.riccati_k0);
    surrogate.metadata["x0"] = format_number(config.riccati_x0);
    surrogate.metadata["t_end"] = format_number(config.riccati_t_end);
    stamp(surrogate, "scalar", config.seed());
    out << "surrogate: max X = " << format_number(peak) << ", beta(T) = " << (beta ? format_number(*beta) : "none")
        << '\n';

    const Trajectory run = simulate_config(config);
    save_run(config, run, compute_d_constants(run, config.exponents.eps0));
    AuditReport pde = riccati_audit(run);
    const std::vector<AuditReport> reports{surrogate, pde};
    write_reports(dir, reports, out);
    return audit_exit_code(reports);
}

int run_plot(const fs::path& run_dir, const std::optional<std::string>& out_dir, std::ostream& out) {
    if (!fs::is_directory(run_dir)) throw Error(ErrorKind::io_error, "run directory " + run_dir.string() + " does not exist");
    const std::string text = read_text(run_dir / run_files::series);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::io_error, "series CSV is empty");
    const auto header = split_csv_line(line);
    std::vector<std::vector<double>> columns(header.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) throw Error(ErrorKind::io_error, "ragged series CSV");
        for (std::size_t i = 0; i < cells.size(); ++i) columns[i].push_back(std::strtod(cells[i].c_str(), nullptr));
    }
    if (header.empty() || header[0].rfind("t ", 0) != 0) throw Error(ErrorKind::io_error, "series CSV must start with t");
    const fs::path dir = out_dir ? fs::path(*out_dir) : run_dir / run_files::plots;
    int written = 0;
    for (std::size_t i = 1; i < header.size(); ++i) {
        const std::string name = header[i].substr(0, header[i].find(" ["));
        LinePlot plot{name, header[0], header[i], columns[0], columns[i]};
        if (plot.x.empty()) throw Error(ErrorKind::io_error, "series CSV has no samples");
        write_text(dir / (name + ".svg"), render_svg(plot));
        ++written;
    }
    out << "wrote " << written << " plots to " << dir.string() << '\n';
    return exit_ok;
}

}  // namespace axicyl
