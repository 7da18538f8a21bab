#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "axicyl/commands.hpp"
#include "axicyl/config.hpp"
#include "axicyl/error.hpp"
#include "axicyl/report_io.hpp"
#include "axicyl/svg_plot.hpp"
#include "doctest.h"

using namespace axicyl;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("axicyl_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::io_error;
}

RunConfig small_config(const fs::path& out) {
    RunConfig c = parse_config(
        "[grid]\nnr = 16\nnz = 16\n"
        "[time]\nt_end = 0.01\ndt = 1e-3\nadaptive = false\nsnapshot_every = 5\n"
        "[forcing]\npreset = random\namplitude = 0.5\n");
    c.output_dir = out.string();
    return c;
}

}  // namespace

TEST_CASE("config defaults and keys") {
    const RunConfig c = parse_config("");
    CHECK(c.nr == 32);
    CHECK(c.z_scheme == ZScheme::spectral);
    CHECK(c.audits == std::vector<std::string>{"all"});

    const RunConfig d = parse_config(
        "[grid]\nnr = 24\nz_scheme = fd\n[physics]\nnu = 0.5\n[time]\nscheme = imex\nadvection = upwind\n"
        "[initial]\npreset = single-mode\nseed = 7\n[audit]\nselect = energy, l4-swirl\nmu = 0.25\n");
    CHECK(d.nr == 24);
    CHECK(d.z_scheme == ZScheme::finite_difference);
    CHECK(d.simulation.dynamics.nu == 0.5);
    CHECK(d.simulation.dynamics.advection == Advection::upwind);
    CHECK(d.initial.preset == Preset::single_mode);
    CHECK(d.initial.seed == 7);
    CHECK(d.forcing.seed == 7);
    CHECK(d.audits == std::vector<std::string>{"energy", "l4-swirl"});
    CHECK(d.mu == 0.25);
}

TEST_CASE("config errors") {
    for (const char* text : {
             "[physics]\nnu = 0\n",
             "[physics]\nnu = abc\n",
             "[physics]\nviscosity = 1\n",
             "[grid]\nnr = 2\n",
             "[grid]\nz_scheme = chebyshev\n",
             "[time]\nadaptive = maybe\n",
             "[audit]\nmu = 1\n",
             "[audit]\nd = 3\n",
             "[audit]\neps1 = 0.01\neps2 = 0.5\n",
             "[audit]\nselect = nonsense\n",
             "[initial]\npreset = vortex\n",
             "[riccati]\nc0 = 0\n",
             "[output]\ndirectory =\n",
         }) {
        CAPTURE(text);
        CHECK(kind_of([&] { parse_config(text); }) == ErrorKind::config_error);
    }
    CHECK(kind_of([] { load_config("/nonexistent/axicyl.ini"); }) == ErrorKind::config_error);
}

TEST_CASE("command-line overrides") {
    RunConfig c = parse_config("");
    apply_overrides(c, {std::uint64_t{99}, std::string("48x40"), std::string("elsewhere")});
    CHECK(c.nr == 48);
    CHECK(c.nz == 40);
    CHECK(c.initial.seed == 99);
    CHECK(c.forcing.seed == 99);
    CHECK(c.output_dir == "elsewhere");
    for (const char* bad : {"abc", "64", "64x", "64x64y", "4x4"}) {
        CAPTURE(bad);
        RunConfig d = parse_config("");
        CHECK(kind_of([&] { apply_overrides(d, {std::nullopt, std::string(bad), std::nullopt}); }) ==
              ErrorKind::config_error);
    }
}

TEST_CASE("config survives an INI round trip") {
    const RunConfig c = parse_config(
        "[grid]\nradius = 2\nnr = 20\nz_scheme = fd\n[physics]\nnu = 0.3\n[time]\nt_end = 0.5\ncfl = 0.2\n"
        "[forcing]\npreset = single-mode\namplitude = 0.25\nseed = 3\n[audit]\nselect = explicit\neps0 = 0.02\n"
        "[riccati]\nk0 = 0.001\n[output]\ndirectory = runs/a\n");
    const std::string text = to_ini(c);
    CHECK(to_ini(parse_config(text)) == text);
    const RunConfig back = parse_config(text);
    CHECK(back.radius == 2.0);
    CHECK(back.forcing.seed == 3);
    CHECK(back.output_dir == "runs/a");
    CHECK(back.exponents.eps0 == 0.02);
}

TEST_CASE("audit selection names") {
    CHECK(is_explicit_audit("energy"));
    CHECK(is_explicit_audit("hardy-weight-bound"));
    CHECK_FALSE(is_explicit_audit("meridian-vorticity"));
    for (const auto& id : audit_ids()) {
        CAPTURE(id);
        CHECK_NOTHROW(parse_config("[audit]\nselect = " + id + "\n"));
    }
}

TEST_CASE("number formatting and CSV quoting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    const std::string field = "a,\"b\"";
    const auto cells = split_csv_line("x," + quote_csv(field) + ",y");
    REQUIRE(cells.size() == 3);
    CHECK(cells[1] == field);
}

TEST_CASE("report CSV round trip") {
    AuditReport a = explicit_audit("energy", 1.0 / 3.0, 2.0);
    a.lhs_terms = {{"|v(t)|^2", 0.25}, {"x, y", 1.0 / 12.0}};
    a.rhs_terms = {{"2 |v(0)|^2", 2.0}};
    a.metadata = {{"grid", "16x16"}, {"note", "quoted \"text\""}};
    AuditReport b = recorded_audit("l4-swirl", 0.0, 0.0);
    AuditReport c = recorded_audit("hardy-weighted", 1.0, 0.0);
    c.verdict = Verdict::inapplicable;

    const std::vector<AuditReport> reports{a, b, c};
    const auto back = parse_reports_csv(reports_csv(reports));
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CAPTURE(i);
        CHECK(back[i].id == reports[i].id);
        CHECK(back[i].verdict == reports[i].verdict);
        CHECK(back[i].lhs == reports[i].lhs);
        CHECK(back[i].rhs == reports[i].rhs);
        CHECK(back[i].explicit_constant == reports[i].explicit_constant);
        CHECK(back[i].metadata == reports[i].metadata);
        REQUIRE(back[i].lhs_terms.size() == reports[i].lhs_terms.size());
        for (std::size_t k = 0; k < back[i].lhs_terms.size(); ++k) {
            CHECK(back[i].lhs_terms[k].name == reports[i].lhs_terms[k].name);
            CHECK(back[i].lhs_terms[k].value == reports[i].lhs_terms[k].value);
        }
    }
    CHECK(std::isinf(back[2].ratio));
    CHECK(reports_csv(back) == reports_csv(reports));
}

TEST_CASE("series CSV is deterministic and carries units") {
    const RunConfig c = small_config(scratch("series"));
    const std::string first = series_csv(simulate_config(c));
    const std::string second = series_csv(simulate_config(c));
    CHECK(first == second);
    const std::string header = first.substr(0, first.find('\n'));
    CHECK(header.rfind("t [T],", 0) == 0);
    for (const auto& cell : split_csv_line(header)) {
        CAPTURE(cell);
        CHECK(cell.find(" [") != std::string::npos);
        CHECK(cell.back() == ']');
    }
    const auto samples = parse_series_csv(first);
    const auto run = simulate_config(c);
    REQUIRE(samples.size() == run.samples.size());
    CHECK(samples.back().kinetic_sq == run.samples.back().kinetic_sq);
    CHECK(samples.back().t == run.samples.back().t);
}

TEST_CASE("simulate, reload and audit a saved run") {
    const fs::path dir = scratch("saved");
    const RunConfig c = small_config(dir);
    std::ostringstream log;
    REQUIRE(run_simulate(c, log) == exit_ok);
    for (const char* name : {run_files::manifest, run_files::config, run_files::series, run_files::d_constants,
                             run_files::final_state}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / name));
    }
    CHECK(fs::exists(dir / run_files::snapshots / "step_0000005.csv"));

    const SavedRun saved = load_run(dir);
    const Trajectory fresh = simulate_config(c);
    CHECK(saved.config.nr == 16);
    CHECK(series_csv(saved.run) == series_csv(fresh));
    const auto a = saved.run.last.state.u1.values();
    const auto b = fresh.last.state.u1.values();
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));

    const int code = run_audit_saved(dir, std::nullopt, log);
    CHECK(code == audit_exit_code(run_audits(fresh, c)));
    const auto reports = parse_reports_csv(read_text(dir / run_files::report));
    CHECK(reports.size() == run_audits(fresh, c).size());
    CHECK(fs::exists(dir / run_files::summary));
}

TEST_CASE("audit selection filters reports") {
    RunConfig c = small_config(scratch("select"));
    const Trajectory run = simulate_config(c);
    c.audits = {"explicit"};
    for (const auto& r : run_audits(run, c)) CHECK(is_explicit_audit(r.id));
    c.audits = {"l4-swirl"};
    const auto one = run_audits(run, c);
    REQUIRE(one.size() == 1);
    CHECK(one[0].id == "l4-swirl");
}

TEST_CASE("plots") {
    const std::string flat = render_svg({"flat", "t", "y", {0.0, 1.0, 2.0}, {3.0, 3.0, 3.0}});
    CHECK(flat.rfind("<svg", 0) == 0);
    CHECK(flat.find("polyline") != std::string::npos);
    CHECK(flat.find("nan") == std::string::npos);
    CHECK_THROWS_AS(render_svg({"e", "t", "y", {}, {}}), Error);
    CHECK_THROWS_AS(render_svg({"m", "t", "y", {0.0, 1.0}, {0.0}}), Error);

    const fs::path dir = scratch("plot");
    std::ostringstream log;
    REQUIRE(run_simulate(small_config(dir), log) == exit_ok);
    CHECK(run_plot(dir, std::nullopt, log) == exit_ok);
    CHECK(fs::exists(dir / run_files::plots / "kinetic_sq.svg"));

    std::ostringstream err;
    CHECK(guarded([&] { return run_plot(dir / "missing", std::nullopt, log); }, err) == exit_config_error);
    CHECK_FALSE(err.str().empty());
}

TEST_CASE("exit codes") {
    CHECK(exit_code_for(Error(ErrorKind::config_error, "")) == exit_config_error);
    CHECK(exit_code_for(Error(ErrorKind::io_error, "")) == exit_config_error);
    CHECK(exit_code_for(Error(ErrorKind::invalid_dimension, "")) == exit_config_error);
    CHECK(exit_code_for(Error(ErrorKind::infeasible_parameters, "")) == exit_config_error);
    CHECK(exit_code_for(Error(ErrorKind::numerical_failure, "")) == exit_numerical_failure);
    std::ostringstream err;
    CHECK(guarded([] { return exit_ok; }, err) == exit_ok);
    CHECK(guarded([]() -> int { throw Error(ErrorKind::numerical_failure, "blow-up"); }, err) == exit_numerical_failure);

    AuditReport ok = explicit_audit("energy", 1.0, 2.0);
    AuditReport bad = explicit_audit("energy", 3.0, 1.0);
    CHECK(audit_exit_code({ok}) == exit_ok);
    CHECK(audit_exit_code({ok, bad}) == exit_audit_failure);
}

TEST_CASE("exponents command") {
    const fs::path dir = scratch("exponents");
    std::ostringstream out;
    REQUIRE(run_exponents(12, "0.12", "0.01", "1/100", dir.string(), out) == exit_ok);
    const std::string table = read_text(dir / "exponents.csv");
    CHECK(table.find("theta,7/80,0.087499999999999994") != std::string::npos);
    CHECK(table.find("delta,208/35,") != std::string::npos);
    CHECK(table.find("closing_condition,true,1") != std::string::npos);
    std::ostringstream err;
    CHECK(guarded([&] { return run_exponents(12, "0.01", "0.12", "1/100", dir.string(), out); }, err) ==
          exit_config_error);
}
