#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skewrd/model.hpp"
#include "skewrd/simulator.hpp"

namespace skewrd {

struct SectorSettings {
    double epsilon0 = pi / 16.0;
    std::optional<double> r0;  // unset: derived from the host growth bound
};

struct ResolveSettings {
    double lambda_re = 1.0;
    double lambda_im = 0.0;
    int modes = 64;
    long nx = 256;  // cells per unit length in x
    long ny = 256;
    std::string rhs = "random";  // zero | random | file:<csv>
    std::uint64_t seed = 1;
    std::string species = "all";  // juvenile | adult | host | all
};

struct OutputSettings {
    std::string path;             // file stem; empty writes only the report
    std::string format = "csv";   // csv | binary
    std::string report = "text";  // text | csv | json-lines
};

struct VerifySettings {
    long samples = 100000;
    std::uint64_t seed = 20240601;
    long oracle_problems = 50;
    long oracle_cells = 4096;
};

struct SweepSettings {
    std::vector<double> angles{0.0, pi / 3.0, -pi / 3.0};  // empty angles are not allowed
    double magnitude_min = 1.0;
    double magnitude_max = 1e4;
    long points_per_ray = 9;
    int modes = 32;
    long nx = 128;
    long ny = 128;
    int probes = 32;
    int power_steps = 20;
    std::uint64_t seed = 7;
};

struct Config {
    ModelParameters model;
    SectorSettings sector;
    ResolveSettings resolve;
    RunConfig time;  // grid sizes come from [grid], stepping from [time]
    InitialCondition ic;
    std::string ic_file;  // CSV snapshot overriding the expressions when set
    OutputSettings output;
    VerifySettings verify;
    SweepSettings sweep;
};

// Parses section/key/value text. Errors carry line and column; unknown and duplicate
// keys are rejected; the parsed values are revalidated.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

// Writes every key at 17 significant digits; parse_config(emit_config(c)) == c.
std::string emit_config(const Config& c);

bool operator==(const Config& a, const Config& b);

void validate(const Config& c);

// Replaces every seed in the config.
void override_seed(Config& c, std::uint64_t seed);

double effective_r0(const Config& c);

struct ConfigKeyDoc {
    std::string section;
    std::string key;
    std::string description;
    std::string default_value;
};

std::vector<ConfigKeyDoc> config_key_docs();

std::string format_double(double v);

}  // namespace skewrd
