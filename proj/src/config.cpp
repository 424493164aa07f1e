#include "skewrd/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "skewrd/error.hpp"
#include "skewrd/expression.hpp"
#include "skewrd/sector.hpp"

namespace skewrd {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

struct ValueError {
    std::string message;
};

double to_double(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) throw ValueError{"'" + s + "' is not a decimal number"};
    return v;
}

long to_long(const std::string& s) {
    long v = 0;
    const char* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) throw ValueError{"'" + s + "' is not an integer"};
    return v;
}

std::uint64_t to_seed(const std::string& s) {
    std::uint64_t v = 0;
    const char* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) throw ValueError{"'" + s + "' is not a non-negative integer"};
    return v;
}

std::string one_of(const std::string& s, std::initializer_list<const char*> allowed) {
    std::string list;
    for (const char* a : allowed) {
        if (s == a) return s;
        list += list.empty() ? a : std::string(", ") + a;
    }
    throw ValueError{"'" + s + "' is not one of " + list};
}

struct Key {
    const char* section;
    const char* key;
    const char* description;
    std::function<std::string(const Config&)> get;
    std::function<void(Config&, const std::string&)> set;
};

#define REAL(sec, name, field, doc)                                                   \
    Key {                                                                             \
        sec, name, doc, [](const Config& c) { return format_double(c.field); },       \
            [](Config& c, const std::string& v) { c.field = to_double(v); }           \
    }
#define INTEGER(sec, name, field, type, doc)                                          \
    Key {                                                                             \
        sec, name, doc, [](const Config& c) { return std::to_string(c.field); },      \
            [](Config& c, const std::string& v) { c.field = static_cast<type>(to_long(v)); } \
    }
#define SEED(sec, name, field, doc)                                                   \
    Key {                                                                             \
        sec, name, doc, [](const Config& c) { return std::to_string(c.field); },      \
            [](Config& c, const std::string& v) { c.field = to_seed(v); }             \
    }
#define TEXT(sec, name, field, doc)                                                   \
    Key {                                                                             \
        sec, name, doc, [](const Config& c) { return c.field; },                      \
            [](Config& c, const std::string& v) { c.field = v; }                      \
    }

const std::vector<Key>& keys() {
    static const std::vector<Key> table = {
        REAL("model", "sigma_J_minus", model.sigma_J_minus, "juvenile survival probability, infected habitat, in [0,1]"),
        REAL("model", "sigma_J_plus", model.sigma_J_plus, "juvenile survival probability, susceptible habitat, in [0,1]"),
        REAL("model", "sigma_A_minus", model.sigma_A_minus, "adult vector survival probability, infected habitat, in [0,1]"),
        REAL("model", "sigma_A_plus", model.sigma_A_plus, "adult vector survival probability, susceptible habitat, in [0,1]"),
        REAL("model", "sigma_H_minus", model.sigma_H_minus, "host survival probability, infected habitat, in [0,1]"),
        REAL("model", "sigma_H_plus", model.sigma_H_plus, "host survival probability, susceptible habitat, in [0,1]"),
        REAL("model", "tau_minus", model.tau_minus, "juvenile to adult transition probability, infected habitat, in [0,1]"),
        REAL("model", "tau_plus", model.tau_plus, "juvenile to adult transition probability, susceptible habitat, in [0,1]"),
        REAL("model", "f_A_minus", model.f_A_minus, "adult vector fecundity per unit time, infected habitat, >= 0"),
        REAL("model", "f_A_plus", model.f_A_plus, "adult vector fecundity per unit time, susceptible habitat, >= 0"),
        REAL("model", "f_H_minus", model.f_H_minus, "host fecundity per unit time, infected habitat, >= 0"),
        REAL("model", "f_H_plus", model.f_H_plus, "host fecundity per unit time, susceptible habitat, >= 0"),
        REAL("model", "nu", model.nu, "vertical transmission rate per infected host female, >= 0"),
        REAL("model", "Lambda_J", model.Lambda_J, "juvenile infection rate, > 0"),
        REAL("model", "Lambda_A", model.Lambda_A, "adult vector infection rate, > 0"),
        REAL("model", "Lambda_H", model.Lambda_H, "host infection rate, > 0"),
        REAL("model", "d_J_minus", model.d_J_minus, "juvenile diffusion coefficient, infected habitat, > 0"),
        REAL("model", "d_J_plus", model.d_J_plus, "juvenile diffusion coefficient, susceptible habitat, > 0"),
        REAL("model", "d_A_minus", model.d_A_minus, "adult vector diffusion coefficient, infected habitat, > 0"),
        REAL("model", "d_A_plus", model.d_A_plus, "adult vector diffusion coefficient, susceptible habitat, > 0"),
        REAL("model", "d_H_minus", model.d_H_minus, "host diffusion coefficient, infected habitat, > 0"),
        REAL("model", "d_H_plus", model.d_H_plus, "host diffusion coefficient, susceptible habitat, > 0"),
        REAL("model", "p_J", model.p_J, "probability a juvenile at the interface moves into the infected habitat, in (0,1)"),
        REAL("model", "p_A", model.p_A, "probability an adult vector at the interface moves into the infected habitat, in (0,1)"),
        REAL("model", "p_H", model.p_H, "probability a host at the interface moves into the infected habitat, in (0,1)"),
        REAL("model", "ell", model.ell, "width of the infected habitat [-ell, 0], > 0"),
        REAL("model", "L", model.L, "width of the susceptible habitat [0, L], > 0"),
        REAL("sector", "epsilon0", sector.epsilon0, "angular margin of the resolvent sector, in (0, pi/8)"),
        Key{"sector", "r0",
            "bound on the host growth-to-diffusion ratio, in (0, pi^2); 'auto' uses the smallest admissible value",
            [](const Config& c) { return c.sector.r0 ? format_double(*c.sector.r0) : std::string("auto"); },
            [](Config& c, const std::string& v) {
                if (v == "auto") c.sector.r0.reset();
                else c.sector.r0 = to_double(v);
            }},
        REAL("resolve", "lambda_re", resolve.lambda_re, "real part of the spectral parameter"),
        REAL("resolve", "lambda_im", resolve.lambda_im, "imaginary part of the spectral parameter"),
        INTEGER("resolve", "modes", resolve.modes, int, "number of sine modes in y, at most ny - 1"),
        INTEGER("resolve", "nx", resolve.nx, long, "x cells per unit length on each habitat"),
        INTEGER("resolve", "ny", resolve.ny, long, "y cells on [0, 1]"),
        Key{"resolve", "rhs", "right-hand side: zero, random (seeded smooth field) or file:<snapshot csv>",
            [](const Config& c) { return c.resolve.rhs; },
            [](Config& c, const std::string& v) {
                if (v.rfind("file:", 0) == 0 && v.size() > 5) c.resolve.rhs = v;
                else c.resolve.rhs = one_of(v, {"zero", "random"});
            }},
        SEED("resolve", "seed", resolve.seed, "seed of the random right-hand side"),
        Key{"resolve", "species", "species block to solve: juvenile, adult, host or all",
            [](const Config& c) { return c.resolve.species; },
            [](Config& c, const std::string& v) { c.resolve.species = one_of(v, {"juvenile", "adult", "host", "all"}); }},
        INTEGER("grid", "nx_I", time.nx_I, Eigen::Index, "simulation x cells on the infected habitat, >= 16"),
        INTEGER("grid", "nx_S", time.nx_S, Eigen::Index, "simulation x cells on the susceptible habitat, >= 16"),
        INTEGER("grid", "ny", time.ny, Eigen::Index, "simulation y cells, >= 16"),
        REAL("time", "dt", time.dt, "time step, > 0"),
        REAL("time", "t_end", time.t_end, "final time, an integer multiple of dt"),
        Key{"time", "scheme", "time integrator: imex, crank-nicolson or fully-implicit-linear",
            [](const Config& c) { return std::string(to_string(c.time.scheme)); },
            [](Config& c, const std::string& v) {
                c.time.scheme = parse_scheme(one_of(v, {"imex", "crank-nicolson", "fully-implicit-linear"}));
            }},
        Key{"time", "interface_form",
            "interface source evaluation: direct (each side's own derivatives) or substituted (infected-side derivatives)",
            [](const Config& c) { return std::string(to_string(c.time.interface_form)); },
            [](Config& c, const std::string& v) {
                c.time.interface_form = parse_interface_form(one_of(v, {"direct", "substituted"}));
            }},
        REAL("time", "max_growth", time.max_growth, "per-step norm growth factor that aborts the run, > 1"),
        INTEGER("time", "output_every", time.output_every, long, "steps between snapshots"),
        SEED("time", "seed", time.seed, "seed of the initial-condition noise"),
        TEXT("ic", "J_I", ic.expressions[0], "initial juvenile density on the infected habitat, expression in x and y"),
        TEXT("ic", "A_I", ic.expressions[1], "initial adult vector density on the infected habitat"),
        TEXT("ic", "H_I", ic.expressions[2], "initial host density on the infected habitat"),
        TEXT("ic", "J_S", ic.expressions[3], "initial juvenile density on the susceptible habitat"),
        TEXT("ic", "A_S", ic.expressions[4], "initial adult vector density on the susceptible habitat"),
        TEXT("ic", "H_S", ic.expressions[5], "initial host density on the susceptible habitat"),
        REAL("ic", "noise", ic.noise, "amplitude of a seeded smooth perturbation added to every density"),
        TEXT("ic", "file", ic_file, "snapshot csv to start from instead of the expressions; empty to disable"),
        TEXT("output", "path", output.path, "output file stem; empty writes only the report"),
        Key{"output", "format", "field output: csv or binary",
            [](const Config& c) { return c.output.format; },
            [](Config& c, const std::string& v) { c.output.format = one_of(v, {"csv", "binary"}); }},
        Key{"output", "report", "report format on stdout: text, csv or json-lines",
            [](const Config& c) { return c.output.report; },
            [](Config& c, const std::string& v) { c.output.report = one_of(v, {"text", "csv", "json-lines"}); }},
        INTEGER("verify", "samples", verify.samples, long, "random samples per lemma check"),
        SEED("verify", "seed", verify.seed, "seed of the lemma and oracle sweeps"),
        INTEGER("verify", "oracle_problems", verify.oracle_problems, long, "random mode problems compared with the oracle"),
        INTEGER("verify", "oracle_cells", verify.oracle_cells, long, "oracle cells per interval, >= 512"),
        Key{"sweep", "angles", "comma-separated ray angles of the spectral parameter, radians",
            [](const Config& c) {
                std::string s;
                for (double a : c.sweep.angles) s += (s.empty() ? "" : ",") + format_double(a);
                return s;
            },
            [](Config& c, const std::string& v) {
                std::vector<double> out;
                std::stringstream ss(v);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
                    if (b == std::string::npos) throw ValueError{"empty angle in list"};
                    out.push_back(to_double(item.substr(b, e - b + 1)));
                }
                if (out.empty()) throw ValueError{"at least one angle is required"};
                c.sweep.angles = out;
            }},
        REAL("sweep", "magnitude_min", sweep.magnitude_min, "smallest |lambda| on each ray"),
        REAL("sweep", "magnitude_max", sweep.magnitude_max, "largest |lambda| on each ray"),
        INTEGER("sweep", "points_per_ray", sweep.points_per_ray, long, "log-spaced samples per ray, >= 2"),
        INTEGER("sweep", "modes", sweep.modes, int, "sine modes used by the norm estimate"),
        INTEGER("sweep", "nx", sweep.nx, long, "x cells per habitat for the norm estimate"),
        INTEGER("sweep", "ny", sweep.ny, long, "y cells for the norm estimate"),
        INTEGER("sweep", "probes", sweep.probes, int, "random probes per norm estimate"),
        INTEGER("sweep", "power_steps", sweep.power_steps, int, "power iterations after the best probe"),
        SEED("sweep", "seed", sweep.seed, "seed of the probe set"),
    };
    return table;
}

#undef REAL
#undef INTEGER
#undef SEED
#undef TEXT

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(ErrorCode code, std::size_t line, std::size_t column, const std::string& what) {
    fail(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

}  // namespace

void validate(const Config& c) {
    validate(c.model);
    make_sector_config(c.sector.epsilon0, effective_r0(c));
    if (c.resolve.nx < 4 || c.resolve.ny < 4) fail(ErrorCode::config_value, "resolve nx and ny must be >= 4");
    if (c.resolve.modes < 1 || c.resolve.modes > c.resolve.ny - 1) {
        fail(ErrorCode::nyquist_exceeded, "resolve modes must lie in 1..ny-1");
    }
    validate(c.time);
    for (const std::string& e : c.ic.expressions) Expression::parse(e);
    if (c.verify.samples < 1) fail(ErrorCode::config_value, "verify samples must be >= 1");
    if (c.verify.oracle_problems < 1) fail(ErrorCode::config_value, "verify oracle_problems must be >= 1");
    if (c.verify.oracle_cells < 512) fail(ErrorCode::config_value, "verify oracle_cells must be >= 512");
    if (!(c.sweep.magnitude_min > 0.0 && c.sweep.magnitude_max >= c.sweep.magnitude_min)) {
        fail(ErrorCode::config_value, "sweep magnitudes must satisfy 0 < magnitude_min <= magnitude_max");
    }
    if (c.sweep.points_per_ray < 2) fail(ErrorCode::config_value, "sweep points_per_ray must be >= 2");
    if (c.sweep.nx < 4 || c.sweep.ny < 4) fail(ErrorCode::config_value, "sweep nx and ny must be >= 4");
    if (c.sweep.modes < 1 || c.sweep.modes > c.sweep.ny - 1) {
        fail(ErrorCode::nyquist_exceeded, "sweep modes must lie in 1..ny-1");
    }
    if (c.sweep.probes < 1 || c.sweep.power_steps < 0) {
        fail(ErrorCode::config_value, "sweep probes must be >= 1 and power_steps >= 0");
    }
}

double effective_r0(const Config& c) { return c.sector.r0 ? *c.sector.r0 : default_r0(c.model); }

void override_seed(Config& c, std::uint64_t seed) {
    c.resolve.seed = seed;
    c.time.seed = seed;
    c.verify.seed = seed;
    c.sweep.seed = seed;
}

Config parse_config(const std::string& text) {
    Config c;
    std::map<std::string, const Key*> lookup;
    for (const Key& k : keys()) lookup[std::string(k.section) + "." + k.key] = &k;
    std::set<std::string> sections;
    for (const Key& k : keys()) sections.insert(k.section);

    std::set<std::string> seen;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        const std::size_t indent = raw.find_first_not_of(" \t") + 1;
        if (line[0] == '[') {
            if (line.back() != ']') fail_at(ErrorCode::config_syntax, line_no, indent, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!sections.count(section)) {
                fail_at(ErrorCode::config_unknown_key, line_no, indent + 1, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail_at(ErrorCode::config_syntax, line_no, indent, "expected key = value");
        if (section.empty()) fail_at(ErrorCode::config_syntax, line_no, indent, "key outside any section");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail_at(ErrorCode::config_syntax, line_no, indent, "missing key before '='");
        const std::string value = trim(line.substr(eq + 1));
        const std::string full = section + "." + key;
        const auto it = lookup.find(full);
        if (it == lookup.end()) fail_at(ErrorCode::config_unknown_key, line_no, indent, "unknown key '" + full + "'");
        if (!seen.insert(full).second) {
            fail_at(ErrorCode::config_duplicate_key, line_no, indent, "duplicate key '" + full + "'");
        }
        const std::size_t after = raw.find('=') + 1;
        const std::size_t first = raw.find_first_not_of(" \t", after);
        const std::size_t value_column = (first == std::string::npos ? after : first) + 1;
        try {
            it->second->set(c, value);
            if (section == "model") validate(c.model);
        } catch (const ValueError& e) {
            fail_at(ErrorCode::config_value, line_no, value_column, full + ": " + e.message);
        } catch (const Error& e) {
            fail_at(e.code(), line_no, value_column, full + ": " + e.what());
        }
    }
    validate(c);
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::io_failure, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const Config& c) {
    std::string out;
    std::string section;
    for (const Key& k : keys()) {
        if (section != k.section) {
            if (!section.empty()) out += "\n";
            section = k.section;
            out += "[" + section + "]\n";
        }
        out += std::string(k.key) + " = " + k.get(c) + "\n";
    }
    return out;
}

bool operator==(const Config& a, const Config& b) { return emit_config(a) == emit_config(b); }

std::vector<ConfigKeyDoc> config_key_docs() {
    const Config defaults;
    std::vector<ConfigKeyDoc> docs;
    for (const Key& k : keys()) {
        std::string value = k.get(defaults);
        double v = 0.0;
        const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec == std::errc() && end == value.data() + value.size() && value.find_first_of(".eE") != std::string::npos) {
            char buf[32];
            value.assign(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
        }
        docs.push_back({k.section, k.key, k.description, value});
    }
    return docs;
}

}  // namespace skewrd
