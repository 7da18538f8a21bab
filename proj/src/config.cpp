#include "axicyl/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "axicyl/error.hpp"

namespace axicyl {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> known_keys = {
    "grid.radius",         "grid.half_height",    "grid.nr",           "grid.nz",         "grid.z_scheme",
    "physics.nu",          "time.t_end",          "time.dt",           "time.adaptive",   "time.cfl",
    "time.scheme",         "time.advection",      "time.nonlinear",    "time.snapshot_every",
    "initial.preset",      "initial.amplitude",   "initial.seed",      "forcing.preset",  "forcing.amplitude",
    "forcing.seed",        "audit.select",        "audit.mu",          "audit.eps0",      "audit.eps1",
    "audit.eps2",          "audit.d",             "riccati.c0",        "riccati.k0",      "riccati.x0",
    "riccati.t_end",       "output.directory",
};

template <typename T>
T read(const pt::ptree& tree, const std::string& key, T fallback) {
    const auto node = tree.get_optional<std::string>(key);
    if (!node) return fallback;
    std::istringstream in(*node);
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof()) {
        throw Error(ErrorKind::config_error, "bad value for " + key + ": '" + *node + "'");
    }
    return value;
}

bool read_bool(const pt::ptree& tree, const std::string& key, bool fallback) {
    const auto node = tree.get_optional<std::string>(key);
    if (!node) return fallback;
    if (*node == "true" || *node == "1" || *node == "yes") return true;
    if (*node == "false" || *node == "0" || *node == "no") return false;
    throw Error(ErrorKind::config_error, "bad boolean for " + key + ": '" + *node + "'");
}

std::string read_string(const pt::ptree& tree, const std::string& key, const std::string& fallback) {
    return tree.get<std::string>(key, fallback);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

template <typename Fn>
auto translate(Fn fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config_error) throw;
        throw Error(ErrorKind::config_error, e.what());
    }
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

const std::set<std::string> explicit_ids = {"energy", "swirl-maximum", "l4-swirl", "small-data-comparison",
                                            "hardy-weight-bound"};

}  // namespace

const std::vector<std::string>& audit_ids() {
    static const std::vector<std::string> ids = {
        "energy",
        "swirl-maximum",
        "l4-swirl",
        "phi-gamma-energy",
        "interaction-bound",
        "x-closure",
        "swirl-z-derivative",
        "swirl-r-derivative",
        "meridian-vorticity",
        "small-data-comparison",
        "hardy-weighted",
        "hardy-weight-bound",
        "weighted-embedding",
        "stream-ratio-weak",
        "stream-ratio-second-order",
        "stream-ratio-third-order-z",
        "stream-ratio-third-order-mixed",
        "stream-ratio-mixed-weight",
        "stream-ratio-axis-weighted",
        "stream-ratio-weighted-third-order",
    };
    return ids;
}

bool is_explicit_audit(const std::string& id) { return explicit_ids.count(id) > 0; }

GridPtr RunConfig::make_grid() const {
    return translate([&] { return axicyl::make_grid(radius, half_height, nr, nz, z_scheme); });
}

RunConfig parse_config(const std::string& text) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorKind::config_error, e.what());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw Error(ErrorKind::config_error, "key outside a section: " + section);
        for (const auto& [key, value] : body) {
            if (!known_keys.count(section + "." + key)) {
                throw Error(ErrorKind::config_error, "unknown key " + section + "." + key);
            }
        }
    }

    RunConfig c;
    c.radius = read(tree, "grid.radius", c.radius);
    c.half_height = read(tree, "grid.half_height", c.half_height);
    c.nr = read(tree, "grid.nr", c.nr);
    c.nz = read(tree, "grid.nz", c.nz);
    c.z_scheme = translate([&] { return parse_z_scheme(read_string(tree, "grid.z_scheme", to_string(c.z_scheme))); });

    SimulationOptions& s = c.simulation;
    s.dynamics.nu = read(tree, "physics.nu", s.dynamics.nu);
    s.t_end = read(tree, "time.t_end", s.t_end);
    s.time_step.dt_max = read(tree, "time.dt", s.time_step.dt_max);
    s.time_step.adaptive = read_bool(tree, "time.adaptive", s.time_step.adaptive);
    s.time_step.cfl = read(tree, "time.cfl", s.time_step.cfl);
    s.dynamics.scheme =
        translate([&] { return parse_time_scheme(read_string(tree, "time.scheme", to_string(s.dynamics.scheme))); });
    s.dynamics.advection =
        translate([&] { return parse_advection(read_string(tree, "time.advection", to_string(s.dynamics.advection))); });
    s.dynamics.nonlinear = read_bool(tree, "time.nonlinear", s.dynamics.nonlinear);
    s.snapshot_every = read(tree, "time.snapshot_every", s.snapshot_every);

    c.initial.preset = translate([&] { return parse_preset(read_string(tree, "initial.preset", to_string(c.initial.preset))); });
    c.initial.amplitude = read(tree, "initial.amplitude", c.initial.amplitude);
    c.initial.seed = read<std::uint64_t>(tree, "initial.seed", c.initial.seed);
    c.forcing.preset = translate([&] { return parse_preset(read_string(tree, "forcing.preset", to_string(c.forcing.preset))); });
    c.forcing.amplitude = read(tree, "forcing.amplitude", c.forcing.amplitude);
    c.forcing.seed = read<std::uint64_t>(tree, "forcing.seed", c.initial.seed);

    if (auto sel = tree.get_optional<std::string>("audit.select")) c.audits = split_list(*sel);
    c.mu = read(tree, "audit.mu", c.mu);
    c.exponents.eps0 = read(tree, "audit.eps0", c.exponents.eps0);
    c.exponents.eps1 = read(tree, "audit.eps1", c.exponents.eps1);
    c.exponents.eps2 = read(tree, "audit.eps2", c.exponents.eps2);
    c.exponents.d = read(tree, "audit.d", c.exponents.d);
    c.simulation.d_exponent = c.exponents.d;

    c.riccati_c0 = read(tree, "riccati.c0", c.riccati_c0);
    c.riccati_k0 = read(tree, "riccati.k0", c.riccati_k0);
    c.riccati_x0 = read(tree, "riccati.x0", c.riccati_x0);
    c.riccati_t_end = read(tree, "riccati.t_end", c.riccati_t_end);

    c.output_dir = read_string(tree, "output.directory", c.output_dir);
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config_error, "cannot read config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

void apply_overrides(RunConfig& config, const ConfigOverrides& o) {
    if (o.seed) {
        config.initial.seed = *o.seed;
        config.forcing.seed = *o.seed;
    }
    if (o.grid) {
        const auto x = o.grid->find('x');
        try {
            if (x == std::string::npos) throw std::invalid_argument("missing x");
            std::size_t used = 0;
            config.nr = std::stoi(o.grid->substr(0, x), &used);
            if (used != x) throw std::invalid_argument("trailing text");
            const std::string tail = o.grid->substr(x + 1);
            config.nz = std::stoi(tail, &used);
            if (used != tail.size()) throw std::invalid_argument("trailing text");
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::config_error, "grid override must look like 64x64, got '" + *o.grid + "'");
        }
    }
    if (o.output_dir) config.output_dir = *o.output_dir;
    validate(config);
}

void validate(const RunConfig& c) {
    const auto fail = [](const std::string& what) { throw Error(ErrorKind::config_error, what); };
    c.make_grid();
    if (!(c.simulation.dynamics.nu > 0.0)) fail("physics.nu must be positive");
    if (!(c.simulation.t_end > 0.0)) fail("time.t_end must be positive");
    if (!(c.simulation.time_step.dt_max > 0.0)) fail("time.dt must be positive");
    if (!(c.simulation.time_step.cfl > 0.0)) fail("time.cfl must be positive");
    if (c.simulation.snapshot_every < 0) fail("time.snapshot_every must be non-negative");
    if (!(c.initial.amplitude >= 0.0) || !(c.forcing.amplitude >= 0.0)) fail("amplitudes must be non-negative");
    if (!(c.mu > 0.0 && c.mu < 1.0)) fail("audit.mu must lie in (0, 1)");
    if (!(c.exponents.d > 3.0)) fail("audit.d must exceed 3");
    if (!(c.exponents.eps0 > 0.0) || !(c.exponents.eps1 > 0.0) || !(c.exponents.eps2 > 0.0)) {
        fail("audit.eps0, eps1, eps2 must be positive");
    }
    const double d = c.exponents.d;
    if (!((1.0 - 3.0 / d) * c.exponents.eps1 - (3.0 / d) * c.exponents.eps2 > 0.0)) {
        fail("audit.eps1, eps2 give a non-positive theta");
    }
    if (!(c.riccati_c0 > 0.0) || !(c.riccati_k0 >= 0.0) || !(c.riccati_x0 >= 0.0) || !(c.riccati_t_end > 0.0)) {
        fail("riccati parameters out of range");
    }
    if (c.output_dir.empty()) fail("output.directory must not be empty");
    if (c.audits.empty()) fail("audit.select must name at least one audit");
    for (const auto& name : c.audits) {
        const auto& ids = audit_ids();
        if (name != "all" && name != "explicit" && name != "recorded" &&
            std::find(ids.begin(), ids.end(), name) == ids.end()) {
            fail("audit.select names unknown audit '" + name + "'");
        }
    }
}

std::string to_ini(const RunConfig& c) {
    std::ostringstream o;
    const SimulationOptions& s = c.simulation;
    o << "[grid]\nradius = " << fmt(c.radius) << "\nhalf_height = " << fmt(c.half_height) << "\nnr = " << c.nr
      << "\nnz = " << c.nz << "\nz_scheme = " << to_string(c.z_scheme) << "\n\n";
    o << "[physics]\nnu = " << fmt(s.dynamics.nu) << "\n\n";
    o << "[time]\nt_end = " << fmt(s.t_end) << "\ndt = " << fmt(s.time_step.dt_max)
      << "\nadaptive = " << (s.time_step.adaptive ? "true" : "false") << "\ncfl = " << fmt(s.time_step.cfl)
      << "\nscheme = " << to_string(s.dynamics.scheme) << "\nadvection = " << to_string(s.dynamics.advection)
      << "\nnonlinear = " << (s.dynamics.nonlinear ? "true" : "false") << "\nsnapshot_every = " << s.snapshot_every
      << "\n\n";
    o << "[initial]\npreset = " << to_string(c.initial.preset) << "\namplitude = " << fmt(c.initial.amplitude)
      << "\nseed = " << c.initial.seed << "\n\n";
    o << "[forcing]\npreset = " << to_string(c.forcing.preset) << "\namplitude = " << fmt(c.forcing.amplitude)
      << "\nseed = " << c.forcing.seed << "\n\n";
    o << "[audit]\nselect = ";
    for (std::size_t i = 0; i < c.audits.size(); ++i) o << (i ? "," : "") << c.audits[i];
    o << "\nmu = " << fmt(c.mu) << "\neps0 = " << fmt(c.exponents.eps0) << "\neps1 = " << fmt(c.exponents.eps1)
      << "\neps2 = " << fmt(c.exponents.eps2) << "\nd = " << fmt(c.exponents.d) << "\n\n";
    o << "[riccati]\nc0 = " << fmt(c.riccati_c0) << "\nk0 = " << fmt(c.riccati_k0) << "\nx0 = " << fmt(c.riccati_x0)
      << "\nt_end = " << fmt(c.riccati_t_end) << "\n\n";
    o << "[output]\ndirectory = " << c.output_dir << "\n";
    return o.str();
}

}  // namespace axicyl
