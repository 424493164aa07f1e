#include "skewrd/app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "skewrd/config.hpp"
#include "skewrd/error.hpp"
#include "skewrd/lemmas.hpp"
#include "skewrd/report.hpp"
#include "skewrd/resolvent.hpp"
#include "skewrd/simulator.hpp"
#include "skewrd/snapshot_io.hpp"
#include "skewrd/verification.hpp"

namespace skewrd {
namespace {

using json = nlohmann::ordered_json;

const char* report_extension(ReportFormat f) {
    switch (f) {
        case ReportFormat::csv: return ".report.csv";
        case ReportFormat::json_lines: return ".report.jsonl";
        default: return ".report.txt";
    }
}

// Prints the report and, when an output stem is set, stores it next to the data.
void publish(const Config& cfg, const Report& report, std::ostream& out) {
    const ReportFormat fmt = parse_report_format(cfg.output.report);
    const std::string text = emit_report(report, fmt);
    out << text;
    if (!cfg.output.path.empty()) write_text_file(cfg.output.path + report_extension(fmt), text);
}

void write_json(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json numbers(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

SectorConfig sector_of(const Config& c) { return make_sector_config(c.sector.epsilon0, effective_r0(c)); }

int simulate(const Config& cfg, std::ostream& out, std::ostream& err) {
    const RunConfig& rc = cfg.time;
    FieldState initial = cfg.ic_file.empty()
                             ? initial_state(cfg.ic, cfg.model, rc)
                             : read_snapshot_csv_file(cfg.ic_file, cfg.model.ell, cfg.model.L, rc.nx_I,
                                                      rc.nx_S, rc.ny);
    initial.t = 0.0;
    const Trajectory tr = run(initial, cfg.model, rc);
    if (!tr.hypothesis_holds)
        err << "warning: host growth bound exceeds r0 = " << format_double(tr.r0)
            << "; the run continues without the generator guarantee\n";

    double max_cont = 0.0, max_flux = 0.0;
    for (double v : tr.continuity_defect) max_cont = std::max(max_cont, v);
    for (double v : tr.flux_defect) max_flux = std::max(max_flux, v);
    long negative = 0;
    for (long n : tr.negative_nodes) negative = std::max(negative, n);

    if (!cfg.output.path.empty()) {
        if (cfg.output.format == "binary") {
            std::ofstream f(cfg.output.path + ".bin", std::ios::binary);
            if (!f) fail(ErrorCode::io_failure, "cannot open " + cfg.output.path + ".bin");
            write_snapshots_binary(tr.snapshots, f);
            if (!f) fail(ErrorCode::io_failure, "write failed: " + cfg.output.path + ".bin");
        } else {
            std::ostringstream s;
            write_snapshots_csv(tr.snapshots, s);
            write_text_file(cfg.output.path + ".csv", s.str());
        }
        json meta;
        meta["scheme"] = to_string(rc.scheme);
        meta["interface_form"] = to_string(rc.interface_form);
        meta["dt"] = rc.dt;
        meta["t_end"] = rc.t_end;
        meta["grid"] = {{"nx_I", rc.nx_I}, {"nx_S", rc.nx_S}, {"ny", rc.ny}};
        meta["seed"] = rc.seed;
        meta["r0"] = tr.r0;
        meta["hypothesis_holds"] = tr.hypothesis_holds;
        meta["times"] = numbers(tr.times);
        meta["continuity_defect"] = numbers(tr.continuity_defect);
        meta["flux_defect"] = numbers(tr.flux_defect);
        json mass;
        for (int i = 0; i < 6; ++i) mass[density_label(i)] = numbers(tr.mass[i]);
        meta["mass"] = mass;
        json snaps = json::array();
        for (std::size_t i = 0; i < tr.snapshots.size(); ++i)
            snaps.push_back({{"t", tr.snapshots[i].t}, {"negative_nodes", tr.negative_nodes[i]}});
        meta["snapshots"] = snaps;
        write_json(cfg.output.path + ".json", meta);
    }

    Report r;
    r.columns = {"steps", "t_end", "final_norm", "max_continuity_defect", "max_flux_defect",
                 "max_negative_nodes", "hypothesis_holds"};
    r.add({static_cast<long>(tr.times.size()) - 1, tr.snapshots.back().t, state_norm(tr.snapshots.back()),
           max_cont, max_flux, negative, tr.hypothesis_holds});
    publish(cfg, r, out);
    return 0;
}

ComplexField resolve_rhs(const Config& cfg, const std::string& source, Eigen::Index nxI, Eigen::Index nxS,
                         Eigen::Index ny, int species) {
    const double ell = cfg.model.ell, L = cfg.model.L;
    if (source == "zero") return ComplexField(ell, L, nxI, nxS, ny);
    if (source == "random") return smooth_random_field(cfg.resolve.seed + species, ell, L, nxI, nxS, ny);
    // file:<csv> reads a snapshot; juvenile/adult/host take the matching density pair.
    const FieldState s = read_snapshot_csv_file(source.substr(5), ell, L, nxI, nxS, ny);
    ComplexField f(ell, L, nxI, nxS, ny);
    f.I.values = s.fields[species].I.values.cast<cplx>();
    f.S.values = s.fields[species].S.values.cast<cplx>();
    return f;
}

int resolve(const Config& cfg, std::ostream& out) {
    const ResolveSettings& rs = cfg.resolve;
    const cplx lambda(rs.lambda_re, rs.lambda_im);
    const SectorConfig sector = sector_of(cfg);
    const auto cells = [&](double width) {
        return std::max<Eigen::Index>(16, static_cast<Eigen::Index>(std::lround(width * rs.nx)));
    };
    const Eigen::Index nxI = cells(cfg.model.ell), nxS = cells(cfg.model.L), ny = rs.ny;

    std::vector<int> species;
    if (rs.species == "all") species = {0, 1, 2};
    else if (rs.species == "juvenile") species = {0};
    else if (rs.species == "adult") species = {1};
    else species = {2};

    Report r;
    r.columns = {"species", "lambda_re", "lambda_im", "fd_residual", "continuity_defect", "flux_defect",
                 "rhs_norm", "solution_norm", "norm_product"};
    std::vector<std::pair<std::string, ComplexField>> fields;
    json meta;
    meta["lambda"] = {rs.lambda_re, rs.lambda_im};
    meta["modes"] = rs.modes;
    meta["grid"] = {{"nx_I", nxI}, {"nx_S", nxS}, {"ny", ny}};
    meta["seed"] = rs.seed;
    meta["epsilon0"] = sector.epsilon0;
    meta["r0"] = sector.r0;
    json rows = json::array();
    for (int s : species) {
        const auto coeffs = species_coefficients(cfg.model, static_cast<Species>(s));
        const ComplexField rhs = resolve_rhs(cfg, rs.rhs, nxI, nxS, ny, s);
        const ComplexField phi = resolve_species(lambda, coeffs, rhs, sector, rs.modes);
        const double residual = fd_residual(phi, rhs, lambda, coeffs);
        const TransmissionDefect d = transmission_defect(phi, coeffs.weight_I, coeffs.weight_S);
        const double nr = l2_norm(rhs), np = l2_norm(phi);
        const double product = nr > 0.0 ? (1.0 + std::abs(lambda)) * np / nr : 0.0;
        const std::string name = to_string(static_cast<Species>(s));
        r.add({name, rs.lambda_re, rs.lambda_im, residual, d.continuity, d.flux, nr, np, product});
        rows.push_back({{"species", name},
                        {"fd_residual", number(residual)},
                        {"continuity_defect", d.continuity},
                        {"flux_defect", d.flux},
                        {"rhs_norm", nr},
                        {"solution_norm", np},
                        {"norm_product", product}});
        fields.emplace_back(name, phi);
    }
    meta["species"] = rows;
    if (!cfg.output.path.empty()) {
        std::ostringstream s;
        write_complex_fields_csv(fields, s);
        write_text_file(cfg.output.path + ".csv", s.str());
        write_json(cfg.output.path + ".json", meta);
    }
    publish(cfg, r, out);
    return 0;
}

int verify_lemmas(const Config& cfg, std::ostream& out) {
    LemmaSweepOptions o;
    o.samples = cfg.verify.samples;
    o.seed = cfg.verify.seed;
    o.epsilon0 = cfg.sector.epsilon0;
    const auto checks = verify_all_lemmas(o);
    publish(cfg, lemma_report(checks), out);
    for (const auto& c : checks)
        if (!c.passed()) return exit_status(ErrorCode::acceptance_failure);
    return 0;
}

int verify_oracle(const Config& cfg, std::ostream& out) {
    const auto cases = random_oracle_cases(cfg.verify.seed, cfg.verify.oracle_problems, sector_of(cfg));
    Report r;
    r.columns = {"case", "k", "lambda_re", "lambda_im", "relative_error", "continuity_defect", "flux_defect",
                 "defect_bound", "status"};
    bool ok = true;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const OracleComparison c = compare_with_oracle(cases[i], cfg.verify.oracle_cells);
        const double bound = 10.0 * c.h * c.h;
        const bool pass = c.relative_error <= 1e-6 && c.continuity_defect <= bound && c.flux_defect <= bound;
        ok = ok && pass;
        r.add({static_cast<long>(i), static_cast<long>(cases[i].k), cases[i].lambda.real(),
               cases[i].lambda.imag(), c.relative_error, c.continuity_defect, c.flux_defect, bound,
               std::string(pass ? "pass" : "fail")});
    }
    publish(cfg, r, out);
    return ok ? 0 : exit_status(ErrorCode::acceptance_failure);
}

int sweep(const Config& cfg, std::ostream& out) {
    const SweepSettings& sw = cfg.sweep;
    const auto lambdas = ray_lambdas(sw.angles, sw.magnitude_min, sw.magnitude_max, sw.points_per_ray);
    NormEstimateOptions o;
    o.modes = sw.modes;
    o.probes = sw.probes;
    o.power_steps = sw.power_steps;
    o.seed = sw.seed;
    const auto samples = estimate_resolvent_norm(lambdas, cfg.model, sector_of(cfg),
                                                 ResolventGrid{sw.nx, sw.nx, sw.ny}, o);
    if (!cfg.output.path.empty()) {
        json meta;
        json rays = json::array();
        const std::size_t per = static_cast<std::size_t>(sw.points_per_ray);
        for (std::size_t a = 0; a < sw.angles.size(); ++a) {
            const std::vector<NormSample> ray(samples.begin() + a * per, samples.begin() + (a + 1) * per);
            const RayTrend t = ray_trend(ray);
            rays.push_back({{"angle", sw.angles[a]},
                            {"min_product", t.min_product},
                            {"max_product", t.max_product},
                            {"slope", t.slope}});
        }
        meta["rays"] = rays;
        meta["seed"] = sw.seed;
        write_json(cfg.output.path + ".json", meta);
        std::ostringstream s;
        emit_report(norm_sweep_report(samples), ReportFormat::csv, s);
        write_text_file(cfg.output.path + ".csv", s.str());
    }
    publish(cfg, norm_sweep_report(samples), out);
    return 0;
}

std::string key_table() {
    std::ostringstream s;
    s << "\nConfiguration keys ([section] key = default: meaning):\n";
    for (const auto& d : config_key_docs())
        s << "  [" << d.section << "] " << d.key << " = " << d.default_value << ": " << d.description << "\n";
    return s.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-habitat vector-host reaction-diffusion model with skew interface transmission"};
    app.footer(key_table());
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    std::optional<std::uint64_t> seed;
    app.add_option("-c,--config", config_path, "configuration file (section/key/value text)");
    app.add_option("--seed", seed, "replace every seed in the configuration");
    bool print_config = false;
    app.add_flag("--print-config", print_config, "print the effective configuration before running");

    auto* sim = app.add_subcommand("simulate", "time integration with snapshot and metadata output");
    auto* res = app.add_subcommand("resolve", "resolvent solve of the diffusion part for one lambda");
    auto* lem = app.add_subcommand("verify-lemmas", "randomized sweeps of the sector inequalities");
    auto* orc = app.add_subcommand("verify-oracle", "spectral mode solver against the finite-difference oracle");
    auto* swp = app.add_subcommand("sweep", "resolvent norm estimates along rays of the sector");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_status(ErrorCode::config_syntax);
    }

    try {
        Config cfg = config_path.empty() ? Config{} : load_config(config_path);
        if (seed) override_seed(cfg, *seed);
        validate(cfg);
        if (print_config) err << emit_config(cfg);
        if (sim->parsed()) return simulate(cfg, out, err);
        if (res->parsed()) return resolve(cfg, out);
        if (lem->parsed()) return verify_lemmas(cfg, out);
        if (orc->parsed()) return verify_oracle(cfg, out);
        if (swp->parsed()) return sweep(cfg, out);
        return 0;
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return exit_status(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_status(ErrorCode::invalid_argument);
    }
}

}  // namespace skewrd
