#include <catch_amalgamated.hpp>

#include <random>

#include "skewrd/error.hpp"
#include "skewrd/model.hpp"

using namespace skewrd;
using Catch::Approx;

namespace {

ModelParameters host_fixture() {
    ModelParameters m;
    m.sigma_H_minus = 0.5;
    m.nu = 0.1;
    m.f_H_minus = 2.0;
    m.d_H_minus = 1.0;
    m.sigma_H_plus = 0.5;
    m.f_H_plus = 1.0;
    m.d_H_plus = 1.0;
    return m;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("default parameters are valid", "[model]") {
    REQUIRE_NOTHROW(validate(ModelParameters{}));
}

TEST_CASE("validation rejects out-of-range fields", "[model]") {
    ModelParameters m;
    m.p_J = 1.0;
    REQUIRE(code_of([&] { validate(m); }) == ErrorCode::invalid_params);
    m = ModelParameters{};
    m.d_A_plus = 0.0;
    REQUIRE(code_of([&] { validate(m); }) == ErrorCode::invalid_params);
    m = ModelParameters{};
    m.sigma_H_minus = 1.2;
    REQUIRE(code_of([&] { validate(m); }) == ErrorCode::invalid_params);
    m = ModelParameters{};
    m.Lambda_H = 0.0;
    REQUIRE(code_of([&] { validate(m); }) == ErrorCode::invalid_params);
}

TEST_CASE("hypothesis holds when both operands are nonpositive", "[model]") {
    const HypothesisReport r = check_hypothesis(host_fixture(), 1.0);
    REQUIRE(r.holds);
    REQUIRE(r.minus_operand < 0.0);
    REQUIRE(r.plus_operand <= 0.0);
    REQUIRE(r.minus_operand == Approx((0.5 * 1.2 - 1.0) / 1.0));
    REQUIRE(r.plus_operand == Approx(0.0).margin(1e-15));
}

TEST_CASE("hypothesis fails for a strong host growth term", "[model]") {
    ModelParameters m = host_fixture();
    m.sigma_H_plus = 1.0;
    m.f_H_plus = 10.0;
    for (double r0 : {0.5, 5.0, pi_sq - 1e-9}) {
        const HypothesisReport r = check_hypothesis(m, r0);
        REQUIRE_FALSE(r.holds);
        REQUIRE(r.plus_operand == Approx(10.0));
    }
}

TEST_CASE("without vertical transmission only the plus operand matters", "[model]") {
    ModelParameters m = host_fixture();
    m.nu = 0.0;
    m.sigma_H_minus = 0.9;
    m.sigma_H_plus = 0.95;
    m.f_H_plus = 3.0;
    m.d_H_plus = 0.5;
    const double plus = (0.95 * 4.0 - 1.0) / 0.5;
    const HypothesisReport r = check_hypothesis(m, plus);
    REQUIRE(r.minus_operand < 0.0);
    REQUIRE(r.holds);
    REQUIRE_FALSE(check_hypothesis(m, plus - 1e-9).holds);
}

TEST_CASE("hypothesis rejects r0 at or beyond pi squared", "[model]") {
    REQUIRE(code_of([] { check_hypothesis(ModelParameters{}, pi_sq); }) == ErrorCode::invalid_r0);
    REQUIRE(code_of([] { check_hypothesis(ModelParameters{}, 0.0); }) == ErrorCode::invalid_r0);
}

TEST_CASE("hypothesis is monotone in r0", "[model]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 500; ++n) {
        ModelParameters m;
        m.sigma_H_minus = u(rng);
        m.sigma_H_plus = u(rng);
        m.f_H_minus = 5.0 * u(rng);
        m.f_H_plus = 5.0 * u(rng);
        m.nu = u(rng);
        m.d_H_minus = 0.05 + u(rng);
        m.d_H_plus = 0.05 + u(rng);
        const double r1 = 0.01 + (pi_sq - 0.02) * u(rng);
        const double r2 = r1 + (pi_sq - 0.01 - r1) * u(rng);
        if (check_hypothesis(m, r1).holds) REQUIRE(check_hypothesis(m, r2).holds);
    }
}

TEST_CASE("default r0 sits just above the host growth bound", "[model]") {
    const ModelParameters m;
    const double r0 = default_r0(m);
    REQUIRE(r0 > 0.0);
    REQUIRE(r0 < pi_sq);
    REQUIRE(check_hypothesis(m, r0).holds);
    REQUIRE(r0 == Approx(std::max(host_growth_bound(m), 0.0) + 1e-3));
}

TEST_CASE("species coefficients follow the diagonal of the operator", "[model]") {
    ModelParameters m;
    m.sigma_H_minus = 0.8;
    m.nu = 0.5;
    m.f_H_minus = 0.5;
    m.d_H_minus = 2.0;
    const SpeciesCoefficients h = species_coefficients(m, Species::host);
    REQUIRE(h.c_minus == Approx(0.0).margin(1e-15));
    REQUIRE(h.d_minus == 2.0);

    m.sigma_A_minus = 0.9;
    REQUIRE(species_coefficients(m, Species::adult).c_minus == Approx(0.1));

    m.tau_minus = 0.3;
    m.sigma_J_minus = 0.5;
    REQUIRE(species_coefficients(m, Species::juvenile).c_minus == Approx(0.65));
}

TEST_CASE("interface weights reproduce the skew flux relation", "[model]") {
    const ModelParameters m;
    const SpeciesCoefficients j = species_coefficients(m, Species::juvenile);
    const double dJ_I = 0.7;
    const double dJ_S = m.p_J * m.d_J_minus * dJ_I / ((1.0 - m.p_J) * m.d_J_plus);
    REQUIRE(j.weight_I * dJ_I == Approx(j.weight_S * dJ_S));
    REQUIRE(j.weight_I == Approx(m.p_J * m.d_J_minus));
    REQUIRE(j.weight_S == Approx((1.0 - m.p_J) * m.d_J_plus));
    const SpeciesCoefficients a = species_coefficients(m, Species::adult);
    REQUIRE(a.weight_I == Approx(m.p_A * m.d_A_minus));
    const SpeciesCoefficients h = species_coefficients(m, Species::host);
    REQUIRE(h.weight_S == Approx((1.0 - m.p_H) * m.d_H_plus));
}

TEST_CASE("trace fluxes vanish for zero derivatives", "[model]") {
    const TraceFluxes t = trace_fluxes(ModelParameters{}, InterfaceDerivatives{});
    REQUIRE(t.T1 == 0.0);
    REQUIRE(t.T2 == 0.0);
    REQUIRE(t.T3 == 0.0);
    REQUIRE(t.T4 == 0.0);
    REQUIRE(t.T5 == 0.0);
}

TEST_CASE("full vertical transmission removes the host source", "[model]") {
    ModelParameters m;
    m.nu = 1.0;
    InterfaceDerivatives dx;
    dx.H_I = 4.2;
    REQUIRE(trace_fluxes(m, dx).T2 == 0.0);
}

TEST_CASE("single adult gradient feeds the juvenile sources", "[model]") {
    ModelParameters m;
    m.f_A_minus = 1.0;
    m.sigma_A_minus = 1.0;
    m.d_A_minus = 2.0;
    InterfaceDerivatives dx;
    dx.A_I = 3.0;
    const TraceFluxes t = trace_fluxes(m, dx);
    REQUIRE(t.T1 == 6.0);
    REQUIRE(t.T5 == 6.0);
    REQUIRE(t.T2 == 0.0);
    REQUIRE(t.T4 == 0.0);
}

TEST_CASE("trace fluxes are linear in the derivative vector", "[model]") {
    const ModelParameters m;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    auto draw = [&] {
        return InterfaceDerivatives{n(rng), n(rng), n(rng), n(rng), n(rng), n(rng)};
    };
    for (int trial = 0; trial < 200; ++trial) {
        const InterfaceDerivatives u = draw(), v = draw();
        const double a = n(rng), b = n(rng);
        const InterfaceDerivatives w{a * u.J_I + b * v.J_I, a * u.A_I + b * v.A_I,
                                     a * u.H_I + b * v.H_I, a * u.J_S + b * v.J_S,
                                     a * u.A_S + b * v.A_S, a * u.H_S + b * v.H_S};
        const TraceFluxes tu = trace_fluxes(m, u), tv = trace_fluxes(m, v), tw = trace_fluxes(m, w);
        const double lhs[5] = {tw.T1, tw.T2, tw.T3, tw.T4, tw.T5};
        const double rhs[5] = {a * tu.T1 + b * tv.T1, a * tu.T2 + b * tv.T2, a * tu.T3 + b * tv.T3,
                               a * tu.T4 + b * tv.T4, a * tu.T5 + b * tv.T5};
        for (int i = 0; i < 5; ++i) {
            const double scale = std::abs(a) * 10.0 + std::abs(b) * 10.0 + 1.0;
            REQUIRE(std::abs(lhs[i] - rhs[i]) <= 1e-14 * scale * 10.0);
        }
    }
}

TEST_CASE("substituted interface sources agree on consistent derivatives", "[model]") {
    const ModelParameters m;
    const InterfaceWeights w = interface_weights(m);
    InterfaceDerivatives dx;
    dx.J_I = 0.3;
    dx.A_I = -1.1;
    dx.H_I = 0.8;
    dx.J_S = w.juvenile_I * dx.J_I / w.juvenile_S;
    dx.A_S = w.adult_I * dx.A_I / w.adult_S;
    dx.H_S = w.host_I * dx.H_I / w.host_S;
    const InterfaceSources a = interface_sources(m, dx);
    const InterfaceSources b = interface_sources_substituted(m, dx);
    for (int i = 0; i < 6; ++i) REQUIRE(a[i] == Approx(b[i]).margin(1e-14));
}

TEST_CASE("infection sources vanish with zero infection rates", "[model]") {
    ModelParameters m;
    m.Lambda_J = m.Lambda_A = m.Lambda_H = 0.0;
    m.nu = 0.4;
    InterfaceDerivatives dx{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    const InterfaceSources s = interface_sources(m, dx);
    REQUIRE(s[0] == 0.0);
    REQUIRE(s[1] == 0.0);
    REQUIRE(s[2] == 0.0);
    REQUIRE(s[3] == trace_fluxes(m, dx).T1);
    REQUIRE(s[5] == trace_fluxes(m, dx).T2);
    REQUIRE(s[3] != 0.0);
    REQUIRE(s[5] != 0.0);
}
