#include <catch_amalgamated.hpp>

#include <string>

#include "skewrd/config.hpp"
#include "skewrd/error.hpp"

using namespace skewrd;

namespace {

Error parse_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e;
    }
    FAIL("config accepted");
    return Error(ErrorCode::invalid_argument, "");
}

bool mentions(const Error& e, const std::string& what) {
    return std::string(e.what()).find(what) != std::string::npos;
}

}  // namespace

TEST_CASE("empty and minimal configs take the documented defaults", "[config]") {
    REQUIRE(parse_config("") == Config{});
    const Config c = parse_config("# defaults\n[model]\n\n[time]\n");
    REQUIRE(c == Config{});
    REQUIRE(c.model.p_J == ModelParameters{}.p_J);
    REQUIRE(c.time.dt == 1e-3);
    REQUIRE(c.output.report == "text");
}

TEST_CASE("values are parsed into their fields", "[config]") {
    const Config c = parse_config(
        "[model]\nd_H_plus = 0.25\nell = 2\n[sector]\nr0 = 6.5\n[time]\nscheme = crank-nicolson\n"
        "dt = 0.01\nt_end = 0.5\n[grid]\nny = 32\n[ic]\nJ_I = sin(pi*y)\n[sweep]\nangles = 0, 1.5\n");
    REQUIRE(c.model.d_H_plus == 0.25);
    REQUIRE(c.model.ell == 2.0);
    REQUIRE(c.sector.r0 == 6.5);
    REQUIRE(c.time.scheme == Scheme::crank_nicolson);
    REQUIRE(c.time.ny == 32);
    REQUIRE(c.ic.expressions[0] == "sin(pi*y)");
    REQUIRE(c.sweep.angles == std::vector<double>{0.0, 1.5});
}

TEST_CASE("probability on the closed endpoint is rejected", "[config]") {
    const Error e = parse_error("[model]\n  p_J = 1.0\n");
    REQUIRE(e.code() == ErrorCode::invalid_params);
    REQUIRE(exit_status(e.code()) == 2);
    REQUIRE(mentions(e, "line 2, column 9"));
    REQUIRE(mentions(e, "p_J"));
    REQUIRE(mentions(e, "open interval"));
}

TEST_CASE("duplicate keys are rejected by name", "[config]") {
    const Error e = parse_error("[time]\ndt = 0.01\ndt = 0.02\n");
    REQUIRE(e.code() == ErrorCode::config_duplicate_key);
    REQUIRE(mentions(e, "time.dt"));
    REQUIRE(mentions(e, "line 3"));
}

TEST_CASE("unknown keys and sections are rejected", "[config]") {
    REQUIRE(parse_error("[model]\nsigma = 1\n").code() == ErrorCode::config_unknown_key);
    REQUIRE(parse_error("[physics]\n").code() == ErrorCode::config_unknown_key);
}

TEST_CASE("syntax errors carry line and column", "[config]") {
    Error e = parse_error("[model]\n\n   no_equals_here\n");
    REQUIRE(e.code() == ErrorCode::config_syntax);
    REQUIRE(mentions(e, "line 3, column 4"));
    REQUIRE(parse_error("dt = 1\n").code() == ErrorCode::config_syntax);
    REQUIRE(parse_error("[model\n").code() == ErrorCode::config_syntax);
    e = parse_error("[time]\ndt =  1e-3x\n");
    REQUIRE(e.code() == ErrorCode::config_value);
    REQUIRE(mentions(e, "line 2, column 7"));
}

TEST_CASE("cross-field invariants are revalidated", "[config]") {
    REQUIRE(parse_error("[time]\ndt = 0.03\nt_end = 0.1\n").code() == ErrorCode::config_value);
    REQUIRE(parse_error("[grid]\nny = 8\n").code() == ErrorCode::config_value);
    REQUIRE(parse_error("[resolve]\nny = 32\nmodes = 32\n").code() == ErrorCode::nyquist_exceeded);
    REQUIRE(parse_error("[ic]\nH_S = sin(\n").code() == ErrorCode::config_value);
    REQUIRE(parse_error("[sector]\nr0 = 10\n").code() == ErrorCode::invalid_r0);
}

TEST_CASE("emit then parse is idempotent", "[config]") {
    Config c;
    c.model.nu = 0.1 + 0.2;
    c.model.d_J_minus = 1.0 / 3.0;
    c.sector.r0 = pi_sq - 1e-3;
    c.resolve.rhs = "file:data/field.csv";
    c.time.interface_form = InterfaceForm::substituted;
    c.ic.expressions[4] = "exp(-x^2)*sin(pi*y)";
    c.sweep.angles = {0.1, -0.7};
    const std::string text = emit_config(c);
    const Config back = parse_config(text);
    REQUIRE(back == c);
    REQUIRE(back.model.nu == c.model.nu);
    REQUIRE(emit_config(back) == text);
    REQUIRE(parse_config(emit_config(Config{})) == Config{});
}

TEST_CASE("seed override replaces every seed", "[config]") {
    Config c;
    override_seed(c, 99);
    REQUIRE(c.resolve.seed == 99);
    REQUIRE(c.time.seed == 99);
    REQUIRE(c.verify.seed == 99);
    REQUIRE(c.sweep.seed == 99);
}

TEST_CASE("every key is documented", "[config]") {
    const auto docs = config_key_docs();
    REQUIRE(docs.size() > 60);
    for (const auto& d : docs) {
        REQUIRE_FALSE(d.description.empty());
        REQUIRE(parse_config("[" + d.section + "]\n" + d.key + " = " + d.default_value + "\n") == Config{});
    }
}

TEST_CASE("r0 defaults to the host bound", "[config]") {
    Config c;
    REQUIRE(effective_r0(c) == default_r0(c.model));
    c.sector.r0 = 7.0;
    REQUIRE(effective_r0(c) == 7.0);
}
