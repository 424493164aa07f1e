#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "skewrd/app.hpp"
#include "skewrd/config.hpp"
#include "skewrd/snapshot_io.hpp"

using namespace skewrd;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "skewrd");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path workdir() {
    const fs::path d = fs::temp_directory_path() / "skewrd-app-tests";
    fs::create_directories(d);
    return d;
}

std::string write_config(const std::string& name, const std::string& text) {
    const fs::path p = workdir() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string stem(const std::string& name) { return (workdir() / name).string(); }

const char* small_run =
    "[grid]\nnx_I = 16\nnx_S = 16\nny = 16\n[time]\ndt = 0.01\nt_end = 0.05\noutput_every = 2\n"
    "[ic]\nJ_I = sin(pi*y)*(1+x)\nA_S = sin(pi*y)*x*(1-x)\nnoise = 0.05\n";

}  // namespace

TEST_CASE("help lists every configuration key", "[app]") {
    const Result r = cli({"--help"});
    REQUIRE(r.code == 0);
    for (const auto& d : config_key_docs()) REQUIRE(r.out.find("[" + d.section + "] " + d.key + " = ") != std::string::npos);
    for (const char* sub : {"simulate", "resolve", "verify-lemmas", "verify-oracle", "sweep"})
        REQUIRE(r.out.find(sub) != std::string::npos);
}

TEST_CASE("usage and configuration errors exit with status 2", "[app]") {
    REQUIRE(cli({}).code == 2);
    REQUIRE(cli({"frobnicate"}).code == 2);
    REQUIRE(cli({"simulate", "--config", stem("missing.cfg")}).code == 2);
    const Result r = cli({"-c", write_config("unknown.cfg", "[model]\nbeta = 1\n"), "simulate"});
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("line 2") != std::string::npos);
    REQUIRE(cli({"-c", write_config("dup.cfg", "[time]\ndt = 1\ndt = 1\n"), "simulate"}).code == 2);
}

TEST_CASE("host resolve outside the growth hypothesis exits with status 4", "[app]") {
    const std::string cfg = write_config(
        "hyp.cfg",
        "[model]\nsigma_H_plus = 1\nf_H_plus = 10\nd_H_plus = 1\n[sector]\nr0 = 9.8696034010893586\n"
        "[resolve]\nspecies = host\nnx = 16\nny = 16\nmodes = 8\n");
    const Result r = cli({"-c", cfg, "resolve"});
    REQUIRE(r.code == 4);
    REQUIRE(r.err.find("hypothesis") != std::string::npos);
    const std::string ok = write_config("adult.cfg",
                                        "[model]\nsigma_H_plus = 1\nf_H_plus = 10\nd_H_plus = 1\n[sector]\n"
                                        "r0 = 9.8696034010893586\n[resolve]\nspecies = adult\nnx = 16\nny = 16\nmodes = 8\n");
    REQUIRE(cli({"-c", ok, "resolve"}).code == 0);
}

TEST_CASE("simulate writes snapshots and metadata deterministically", "[app]") {
    for (const char* format : {"csv", "binary"}) {
        std::string outputs[2][2];
        for (int run = 0; run < 2; ++run) {
            const std::string s = stem(std::string("sim-") + format + std::to_string(run));
            const std::string cfg = write_config("sim.cfg", std::string(small_run) + "[output]\npath = " + s +
                                                                "\nformat = " + format + "\nreport = csv\n");
            const Result r = cli({"--config", cfg, "--seed", "11", "simulate"});
            REQUIRE(r.code == 0);
            REQUIRE(r.out.rfind("steps,t_end,", 0) == 0);
            outputs[run][0] = slurp(s + (std::string(format) == "csv" ? ".csv" : ".bin"));
            outputs[run][1] = slurp(s + ".json");
        }
        REQUIRE(outputs[0][0] == outputs[1][0]);
        REQUIRE(outputs[0][1] == outputs[1][1]);
        const auto meta = nlohmann::json::parse(outputs[0][1]);
        REQUIRE(meta["times"].size() == 6);
        REQUIRE(meta["mass"]["J_I"].size() == 6);
        REQUIRE(meta["snapshots"].size() == 4);
        REQUIRE(meta["seed"] == 11);
    }
    std::istringstream bin(slurp(stem("sim-binary0") + ".bin"));
    const auto snaps = read_snapshots_binary(bin, 1.0, 1.0);
    REQUIRE(snaps.size() == 4);
    REQUIRE(snaps.back().t == Catch::Approx(0.05));
}

TEST_CASE("seed override changes the noisy initial state", "[app]") {
    const std::string cfg = write_config("seed.cfg", std::string(small_run) + "[output]\npath = " + stem("seed") + "\n");
    REQUIRE(cli({"-c", cfg, "--seed", "1", "simulate"}).code == 0);
    const std::string a = slurp(stem("seed") + ".csv");
    REQUIRE(cli({"-c", cfg, "--seed", "2", "simulate"}).code == 0);
    REQUIRE(slurp(stem("seed") + ".csv") != a);
}

TEST_CASE("simulate restarts from a snapshot csv", "[app]") {
    const std::string first = write_config("first.cfg", std::string(small_run) + "[output]\npath = " + stem("first") + "\n");
    REQUIRE(cli({"-c", first, "simulate"}).code == 0);
    const std::string again = write_config(
        "again.cfg", "[grid]\nnx_I = 16\nnx_S = 16\nny = 16\n[time]\ndt = 0.01\nt_end = 0.01\n[ic]\nfile = " +
                         stem("first") + ".csv\n[output]\npath = " + stem("again") + "\n");
    REQUIRE(cli({"-c", again, "simulate"}).code == 0);
}

TEST_CASE("resolve writes fields and residual metadata", "[app]") {
    std::string files[2];
    for (int run = 0; run < 2; ++run) {
        const std::string s = stem("resolve" + std::to_string(run));
        const std::string cfg = write_config(
            "resolve.cfg", "[resolve]\nlambda_re = 2\nlambda_im = -3\nnx = 32\nny = 32\nmodes = 16\n[output]\npath = " +
                               s + "\nreport = json-lines\n");
        const Result r = cli({"-c", cfg, "resolve"});
        REQUIRE(r.code == 0);
        std::istringstream lines(r.out);
        std::string line;
        int n = 0;
        while (std::getline(lines, line)) {
            const auto j = nlohmann::json::parse(line);
            REQUIRE(j["fd_residual"].get<double>() < 1e-2);
            ++n;
        }
        REQUIRE(n == 3);
        files[run] = slurp(s + ".csv") + slurp(s + ".json");
    }
    REQUIRE(files[0] == files[1]);
}

TEST_CASE("verify subcommands report per check", "[app]") {
    const std::string cfg = write_config(
        "verify.cfg", "[verify]\nsamples = 500\noracle_problems = 5\noracle_cells = 1024\n[output]\nreport = csv\n");
    Result r = cli({"-c", cfg, "verify-lemmas"});
    REQUIRE(r.code == 0);
    REQUIRE(std::count(r.out.begin(), r.out.end(), '\n') == 13);
    REQUIRE(r.out.find("fail") == std::string::npos);
    r = cli({"-c", cfg, "verify-oracle"});
    REQUIRE(r.code == 0);
    REQUIRE(std::count(r.out.begin(), r.out.end(), '\n') == 6);
}

TEST_CASE("sweep output is deterministic", "[app]") {
    std::string files[2];
    for (int run = 0; run < 2; ++run) {
        const std::string s = stem("sweep" + std::to_string(run));
        const std::string cfg = write_config(
            "sweep.cfg", "[sweep]\nangles = 0, 1\nmagnitude_max = 100\npoints_per_ray = 3\nmodes = 4\nnx = 16\n"
                         "ny = 16\nprobes = 2\npower_steps = 2\n[output]\npath = " + s + "\n");
        REQUIRE(cli({"-c", cfg, "sweep"}).code == 0);
        files[run] = slurp(s + ".csv") + slurp(s + ".json");
    }
    REQUIRE(files[0] == files[1]);
    REQUIRE(files[0].rfind("lambda_re,lambda_im,norm_product\n", 0) == 0);
}
