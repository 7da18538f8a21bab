#include "axicyl/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "axicyl/error.hpp"

namespace axicyl {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct FieldColumn {
    const char* name;
    const char* unit;
};

constexpr FieldColumn field_columns[] = {
    {"r", "L"},           {"z", "L"},        {"u1", "T^-1"},          {"omega1", "L^-1 T^-1"},
    {"psi1", "L T^-1"},   {"v_r", "L T^-1"}, {"v_z", "L T^-1"},       {"swirl", "L^2 T^-1"},
    {"phi", "L^-1 T^-1"}, {"gamma", "L^-1 T^-1"},
};

constexpr const char* x_column = "x_running";
constexpr const char* x_unit = "L^0.5 T^-1";

double parse_number(const std::string& cell, const std::string& where) {
    if (cell.empty()) throw Error(ErrorKind::io_error, "empty number in " + where);
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) throw Error(ErrorKind::io_error, "bad number '" + cell + "' in " + where);
    return v;
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

std::string header_cell(const char* name, const char* unit) { return std::string(name) + " [" + unit + "]"; }

/// Name part of a "name [unit]" header cell.
std::string cell_name(const std::string& cell) {
    const auto p = cell.find(" [");
    return p == std::string::npos ? cell : cell.substr(0, p);
}

json terms_json(const std::vector<AuditTerm>& terms) {
    json a = json::array();
    for (const auto& t : terms) a.push_back({{"name", t.name}, {"value", format_number(t.value)}});
    return a;
}

std::vector<AuditTerm> terms_from_json(const json& a) {
    std::vector<AuditTerm> out;
    for (const auto& t : a) {
        out.push_back({t.at("name").get<std::string>(), parse_number(t.at("value").get<std::string>(), "report term")});
    }
    return out;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

ScalarField read_field(const std::vector<std::vector<double>>& rows, std::size_t column, const ScalarField& like) {
    ScalarField f = like.zeros_like();
    const Grid& g = like.grid();
    std::size_t row = 0;
    for (int j = 0; j < g.nr(); ++j) {
        for (int k = 0; k < g.nz(); ++k) f(j, k) = rows[row++][column];
    }
    return f;
}

}  // namespace

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw Error(ErrorKind::io_error, "unterminated quote in CSV line");
    cells.push_back(cur);
    return cells;
}

std::string quote_csv(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string series_csv(const Trajectory& run) {
    std::ostringstream o;
    const auto& cols = sample_columns();
    for (const auto& c : cols) o << header_cell(c.name, c.unit) << ',';
    o << header_cell(x_column, x_unit) << '\n';
    const auto x = run.samples.empty() ? std::vector<double>{} : x_quantity(run).values;
    for (std::size_t i = 0; i < run.samples.size(); ++i) {
        for (const auto& c : cols) o << format_number(run.samples[i].*c.member) << ',';
        o << format_number(x[i]) << '\n';
    }
    return o.str();
}

std::vector<Sample> parse_series_csv(const std::string& text) {
    const auto lines = data_lines(text);
    if (lines.empty()) throw Error(ErrorKind::io_error, "series CSV has no header");
    const auto header = split_csv_line(lines[0]);
    const auto& cols = sample_columns();
    std::vector<double Sample::*> members(header.size(), nullptr);
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = cell_name(header[i]);
        for (const auto& c : cols) {
            if (name == c.name) members[i] = c.member;
        }
    }
    for (const auto& c : cols) {
        if (std::find(members.begin(), members.end(), c.member) == members.end()) {
            throw Error(ErrorKind::io_error, std::string("series CSV lacks column ") + c.name);
        }
    }
    std::vector<Sample> out;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto cells = split_csv_line(lines[l]);
        if (cells.size() != header.size()) throw Error(ErrorKind::io_error, "ragged series CSV row " + std::to_string(l));
        Sample s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (members[i]) s.*members[i] = parse_number(cells[i], "series CSV");
        }
        out.push_back(s);
    }
    return out;
}

std::string d_constants_csv(const DConstants& d) {
    const std::pair<const char*, double> rows[] = {
        {"eps0", d.eps0},
        {"d1", d.d1},
        {"d1_sum", d.d1_sum},
        {"d2", d.d2},
        {"d3", d.d3},
        {"d4", d.d4},
        {"d4_estimate", d.d4_estimate},
        {"d5", d.d5},
        {"d5_vorticity", d.d5_vorticity},
        {"d6", d.d6},
        {"d7", d.d7},
        {"d8", d.d8},
        {"d9", d.d9},
        {"d9_linear", d.d9_linear},
        {"d10", d.d10},
        {"force_l2_l1", d.force_l2_l1},
        {"force_l2_l2", d.force_l2_l2},
        {"v0_l2", d.v0_l2},
        {"f0_sup_l1", d.f0_sup_l1},
        {"u0_sup", d.u0_sup},
        {"uz0_sq", d.uz0_sq},
        {"ur0_sq", d.ur0_sq},
        {"f0_l2_l2_sq", d.f0_l2_l2_sq},
        {"f0_wall_l2", d.f0_wall_l2},
        {"curl_sq", d.curl_sq},
        {"vorticity0_sq", d.vorticity0_sq},
        {"ratio_sources_sq", d.ratio_sources_sq},
        {"phi0_sq", d.phi0_sq},
        {"gamma0_sq", d.gamma0_sq},
        {"f_phi_l12", d.f_phi_l12},
        {"v_phi0_l12", d.v_phi0_l12},
        {"f1_sup_l1", d.f1_sup_l1},
        {"v_phi0_sup", d.v_phi0_sup},
    };
    std::ostringstream o;
    o << "name [-],value [mixed]\n";
    for (const auto& [name, value] : rows) o << name << ',' << format_number(value) << '\n';
    return o.str();
}

std::string snapshot_csv(const Snapshot& s, bool with_duals) {
    const State& st = s.state;
    const Grid& g = st.u1.grid();
    std::ostringstream o;
    o << "# t=" << format_number(st.t) << ", step=" << s.step << ", grid=" << g.descriptor() << '\n';
    const std::size_t ncol = with_duals ? std::size(field_columns) : 7;
    for (std::size_t c = 0; c < ncol; ++c) o << (c ? "," : "") << header_cell(field_columns[c].name, field_columns[c].unit);
    o << '\n';
    for (int j = 0; j < g.nr(); ++j) {
        for (int k = 0; k < g.nz(); ++k) {
            o << format_number(g.r(j)) << ',' << format_number(g.z(k)) << ',' << format_number(st.u1(j, k)) << ','
              << format_number(st.omega1(j, k)) << ',' << format_number(st.psi1(j, k)) << ','
              << format_number(st.v_r(j, k)) << ',' << format_number(st.v_z(j, k));
            if (with_duals) {
                o << ',' << format_number(s.swirl(j, k)) << ',' << format_number(s.phi_gamma.phi(j, k)) << ','
                  << format_number(s.phi_gamma.gamma(j, k));
            }
            o << '\n';
        }
    }
    return o.str();
}

std::string reports_csv(const std::vector<AuditReport>& reports) {
    std::ostringstream o;
    o << "id [-],verdict [-],lhs [mixed],rhs [mixed],ratio [1],explicit_constant [1],lhs_terms [json],"
         "rhs_terms [json],metadata [json]\n";
    for (const auto& r : reports) {
        json meta = json::object();
        for (const auto& [k, v] : r.metadata) meta[k] = v;
        o << quote_csv(r.id) << ',' << to_string(r.verdict) << ',' << format_number(r.lhs) << ','
          << format_number(r.rhs) << ',' << format_number(r.ratio) << ','
          << (r.explicit_constant ? format_number(*r.explicit_constant) : "") << ','
          << quote_csv(terms_json(r.lhs_terms).dump()) << ',' << quote_csv(terms_json(r.rhs_terms).dump()) << ','
          << quote_csv(meta.dump()) << '\n';
    }
    return o.str();
}

std::vector<AuditReport> parse_reports_csv(const std::string& text) {
    const auto lines = data_lines(text);
    if (lines.empty()) throw Error(ErrorKind::io_error, "report CSV has no header");
    std::vector<AuditReport> out;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto c = split_csv_line(lines[l]);
        if (c.size() != 9) throw Error(ErrorKind::io_error, "report CSV row " + std::to_string(l) + " has wrong width");
        AuditReport r;
        r.id = c[0];
        try {
            r.verdict = parse_verdict(c[1]);
            r.lhs_terms = terms_from_json(json::parse(c[6]));
            r.rhs_terms = terms_from_json(json::parse(c[7]));
            const json meta = json::parse(c[8]);
            for (const auto& [k, v] : meta.items()) r.metadata[k] = v.get<std::string>();
        } catch (const json::exception& e) {
            throw Error(ErrorKind::io_error, std::string("report CSV: ") + e.what());
        } catch (const Error& e) {
            throw Error(ErrorKind::io_error, std::string("report CSV: ") + e.what());
        }
        r.lhs = parse_number(c[2], "report lhs");
        r.rhs = parse_number(c[3], "report rhs");
        r.ratio = parse_number(c[4], "report ratio");
        if (!c[5].empty()) r.explicit_constant = parse_number(c[5], "report constant");
        out.push_back(std::move(r));
    }
    return out;
}

std::string summary_table(const std::vector<AuditReport>& reports) {
    std::size_t width = 4;
    for (const auto& r : reports) width = std::max(width, r.id.size() + 2);
    std::ostringstream o;
    o << pad("id", width) << pad("verdict", 16) << pad("lhs", 13) << pad("rhs", 13) << "ratio\n";
    o << std::string(width + 16 + 13 + 13 + 11, '-') << '\n';
    int failures = 0;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::fail) ++failures;
        o << pad(r.id, width) << pad(to_string(r.verdict), 16) << pad(short_number(r.lhs), 13)
          << pad(short_number(r.rhs), 13) << short_number(r.ratio) << '\n';
    }
    o << '\n' << reports.size() << " audits, " << failures << " explicit-constant failures\n";
    if (!reports.empty()) {
        const auto& m = reports.front().metadata;
        if (auto it = m.find("grid"); it != m.end()) o << "grid: " << it->second << '\n';
        if (auto it = m.find("seed"); it != m.end()) o << "seed: " << it->second << '\n';
    }
    return o.str();
}

std::string manifest_json(const RunConfig& config, const Trajectory& run, const std::string& status) {
    json m;
    m["status"] = status;
    m["seed"] = config.seed();
    m["forcing_seed"] = config.forcing.seed;
    m["scheme"] = to_string(config.simulation.dynamics.scheme);
    m["advection"] = to_string(config.simulation.dynamics.advection);
    m["z_scheme"] = to_string(config.z_scheme);
    m["grid"] = run.grid ? run.grid->descriptor() : config.make_grid()->descriptor();
    m["steps"] = run.samples.empty() ? 0 : run.samples.size() - 1;
    m["t_end"] = format_number(run.samples.empty() ? 0.0 : run.samples.back().t);
    m["warnings"] = run.warnings;
    json meta = json::object();
    for (const auto& [k, v] : run.metadata) meta[k] = v;
    m["metadata"] = meta;
    m["files"] = {run_files::config, run_files::series, run_files::d_constants, run_files::final_state};
    m["config"] = to_ini(config);
    return m.dump(2) + "\n";
}

void write_text(const fs::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io_error, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::io_error, "write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io_error, "cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void save_run(const RunConfig& config, const Trajectory& run, const DConstants& d) {
    const fs::path dir = config.output_dir;
    write_text(dir / run_files::config, to_ini(config));
    write_text(dir / run_files::series, series_csv(run));
    write_text(dir / run_files::d_constants, d_constants_csv(d));
    write_text(dir / run_files::final_state, snapshot_csv(run.last, true));
    write_text(dir / run_files::manifest, manifest_json(config, run, "ok"));
}

SavedRun load_run(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorKind::io_error, "run directory " + dir.string() + " does not exist");
    SavedRun out;
    json manifest;
    try {
        manifest = json::parse(read_text(dir / run_files::manifest));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io_error, std::string("manifest: ") + e.what());
    }
    if (manifest.value("status", "") != "ok") throw Error(ErrorKind::io_error, "run in " + dir.string() + " did not finish");
    try {
        out.config = parse_config(read_text(dir / run_files::config));
    } catch (const Error& e) {
        throw Error(ErrorKind::io_error, std::string("saved config: ") + e.what());
    }
    out.config.output_dir = dir.string();
    Trajectory& run = out.run;
    run.grid = out.config.make_grid();
    run.options = out.config.simulation;
    run.samples = parse_series_csv(read_text(dir / run_files::series));
    if (run.samples.empty()) throw Error(ErrorKind::io_error, "series CSV has no samples");
    const auto warnings = manifest.value("warnings", std::vector<std::string>{});
    run.warnings.assign(warnings.begin(), warnings.end());
    const json metadata = manifest.value("metadata", json::object());
    for (const auto& [k, v] : metadata.items()) run.metadata[k] = v.get<std::string>();

    const auto lines = data_lines(read_text(dir / run_files::final_state));
    const std::size_t nodes = static_cast<std::size_t>(run.grid->nr()) * run.grid->nz();
    if (lines.size() != nodes + 1) throw Error(ErrorKind::io_error, "final state does not match the grid");
    std::vector<std::vector<double>> rows;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        std::vector<double> row;
        for (const auto& cell : split_csv_line(lines[l])) row.push_back(parse_number(cell, "final state"));
        if (row.size() != std::size(field_columns)) throw Error(ErrorKind::io_error, "final state row has wrong width");
        rows.push_back(std::move(row));
    }
    const ScalarField like(run.grid, Parity::even, OuterBc::dirichlet);
    const double t = run.samples.back().t;
    const State state = make_state(t, read_field(rows, 2, like), read_field(rows, 3, like));
    run.last.step = static_cast<int>(run.samples.size()) - 1;
    run.last.state = state;
    run.last.swirl = read_field(rows, 7, state.swirl());
    PhiGamma pg = initial_phi_gamma(state);
    pg.phi = read_field(rows, 8, pg.phi);
    pg.gamma = read_field(rows, 9, pg.gamma);
    run.last.phi_gamma = pg;
    return out;
}

}  // namespace axicyl
