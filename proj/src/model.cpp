#include "skewrd/model.hpp"

#include <algorithm>
#include <cmath>

#include "skewrd/error.hpp"

namespace skewrd {

const char* to_string(Species s) {
    switch (s) {
        case Species::juvenile: return "juvenile";
        case Species::adult: return "adult";
        case Species::host: return "host";
    }
    return "unknown";
}

namespace {

void require(bool ok, const char* field, const char* constraint, double value) {
    if (!ok) {
        fail(ErrorCode::invalid_params,
             std::string(field) + " = " + std::to_string(value) + " violates " + constraint);
    }
}

void probability(double v, const char* field) {
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0, field, "0 <= value <= 1", v);
}

void open_probability(double v, const char* field) {
    require(std::isfinite(v) && v > 0.0 && v < 1.0, field, "open interval 0 < value < 1", v);
}

void positive(double v, const char* field) {
    require(std::isfinite(v) && v > 0.0, field, "value > 0", v);
}

void nonnegative(double v, const char* field) {
    require(std::isfinite(v) && v >= 0.0, field, "value >= 0", v);
}

}  // namespace

void validate(const ModelParameters& m) {
    probability(m.sigma_J_minus, "sigma_J_minus");
    probability(m.sigma_J_plus, "sigma_J_plus");
    probability(m.sigma_A_minus, "sigma_A_minus");
    probability(m.sigma_A_plus, "sigma_A_plus");
    probability(m.sigma_H_minus, "sigma_H_minus");
    probability(m.sigma_H_plus, "sigma_H_plus");
    probability(m.tau_minus, "tau_minus");
    probability(m.tau_plus, "tau_plus");
    nonnegative(m.f_A_minus, "f_A_minus");
    nonnegative(m.f_A_plus, "f_A_plus");
    nonnegative(m.f_H_minus, "f_H_minus");
    nonnegative(m.f_H_plus, "f_H_plus");
    nonnegative(m.nu, "nu");
    positive(m.Lambda_J, "Lambda_J");
    positive(m.Lambda_A, "Lambda_A");
    positive(m.Lambda_H, "Lambda_H");
    positive(m.d_J_minus, "d_J_minus");
    positive(m.d_J_plus, "d_J_plus");
    positive(m.d_A_minus, "d_A_minus");
    positive(m.d_A_plus, "d_A_plus");
    positive(m.d_H_minus, "d_H_minus");
    positive(m.d_H_plus, "d_H_plus");
    open_probability(m.p_J, "p_J");
    open_probability(m.p_A, "p_A");
    open_probability(m.p_H, "p_H");
    positive(m.ell, "ell");
    positive(m.L, "L");
}

InterfaceWeights interface_weights(const ModelParameters& m) {
    return {m.p_J * m.d_J_minus, (1.0 - m.p_J) * m.d_J_plus,
            m.p_A * m.d_A_minus, (1.0 - m.p_A) * m.d_A_plus,
            m.p_H * m.d_H_minus, (1.0 - m.p_H) * m.d_H_plus};
}

SpeciesCoefficients species_coefficients(const ModelParameters& m, Species species) {
    validate(m);
    const InterfaceWeights w = interface_weights(m);
    SpeciesCoefficients c;
    c.species = species;
    switch (species) {
        case Species::juvenile:
            c.d_minus = m.d_J_minus;
            c.d_plus = m.d_J_plus;
            c.c_minus = 1.0 - (1.0 - m.tau_minus) * m.sigma_J_minus;
            c.c_plus = 1.0 - (1.0 - m.tau_plus) * m.sigma_J_plus;
            c.weight_I = w.juvenile_I;
            c.weight_S = w.juvenile_S;
            break;
        case Species::adult:
            c.d_minus = m.d_A_minus;
            c.d_plus = m.d_A_plus;
            c.c_minus = 1.0 - m.sigma_A_minus;
            c.c_plus = 1.0 - m.sigma_A_plus;
            c.weight_I = w.adult_I;
            c.weight_S = w.adult_S;
            break;
        case Species::host:
            c.d_minus = m.d_H_minus;
            c.d_plus = m.d_H_plus;
            c.c_minus = 1.0 - m.sigma_H_minus * (1.0 + m.nu * m.f_H_minus);
            c.c_plus = 1.0 - m.sigma_H_plus * (1.0 + m.f_H_plus);
            c.weight_I = w.host_I;
            c.weight_S = w.host_S;
            break;
    }
    return c;
}

HypothesisReport check_hypothesis(const ModelParameters& m, double r0) {
    validate(m);
    if (!std::isfinite(r0) || r0 <= 0.0 || r0 >= pi_sq) {
        fail(ErrorCode::invalid_r0,
             "r0 = " + std::to_string(r0) + " must satisfy 0 < r0 < pi^2");
    }
    HypothesisReport report;
    report.minus_operand = (m.sigma_H_minus * (1.0 + m.nu * m.f_H_minus) - 1.0) / m.d_H_minus;
    report.plus_operand = (m.sigma_H_plus * (1.0 + m.f_H_plus) - 1.0) / m.d_H_plus;
    report.r0 = r0;
    report.holds = std::max(report.minus_operand, report.plus_operand) <= r0;
    return report;
}

double host_growth_bound(const ModelParameters& m) {
    const SpeciesCoefficients c = species_coefficients(m, Species::host);
    return std::max(-c.c_minus / c.d_minus, -c.c_plus / c.d_plus);
}

double default_r0(const ModelParameters& m) {
    constexpr double margin = 1e-3;
    const double r0 = std::max(host_growth_bound(m), 0.0) + margin;
    return std::min(r0, pi_sq - 1e-6);
}

bool coefficients_satisfy_hypothesis(const SpeciesCoefficients& c, double r0) {
    return std::max(-c.c_minus / c.d_minus, -c.c_plus / c.d_plus) <= r0;
}

TraceFluxes trace_fluxes(const ModelParameters& m, const InterfaceDerivatives& dx) {
    TraceFluxes t;
    t.T1 = m.f_A_minus * m.sigma_A_minus * m.d_A_minus * dx.A_I;
    t.T2 = (1.0 - m.nu) * m.f_H_minus * m.sigma_H_minus * m.d_H_minus * dx.H_I;
    t.T3 = m.sigma_H_plus * m.d_H_plus * (1.0 + m.f_H_plus) * dx.H_S + t.T2;
    t.T4 = m.tau_plus * m.sigma_J_plus * m.d_J_plus * dx.J_S + m.sigma_A_plus * m.d_A_plus * dx.A_S;
    t.T5 = (1.0 - m.tau_plus) * m.sigma_J_plus * m.d_J_plus * dx.J_S +
           m.f_A_plus * m.sigma_A_plus * m.d_A_plus * dx.A_S + t.T1;
    return t;
}

InterfaceSources interface_sources(const ModelParameters& m, const InterfaceDerivatives& dx) {
    const TraceFluxes t = trace_fluxes(m, dx);
    return {m.Lambda_J * t.T5, m.Lambda_A * t.T4, m.Lambda_H * t.T3, t.T1, 0.0, t.T2};
}

InterfaceSources interface_sources_substituted(const ModelParameters& m,
                                               const InterfaceDerivatives& dx) {
    const InterfaceWeights w = interface_weights(m);
    const double mu = w.juvenile_I / w.juvenile_S;
    const double alpha = w.adult_I / w.adult_S;
    const double beta = w.host_I / w.host_S;

    InterfaceSources s{};
    s[0] = m.Lambda_J * ((1.0 - m.tau_plus) * m.sigma_J_plus * m.d_J_plus * mu * dx.J_I +
                         (m.f_A_minus * m.sigma_A_minus * m.d_A_minus +
                          m.f_A_plus * m.sigma_A_plus * m.d_A_plus * alpha) * dx.A_I);
    s[1] = m.Lambda_A * (m.tau_plus * m.sigma_J_plus * m.d_J_plus * mu * dx.J_I +
                         m.sigma_A_plus * m.d_A_plus * alpha * dx.A_I);
    s[2] = m.Lambda_H * (m.sigma_H_plus * m.d_H_plus * (1.0 + m.f_H_plus) * beta +
                         (1.0 - m.nu) * m.sigma_H_minus * m.f_H_minus * m.d_H_minus) * dx.H_I;
    s[3] = m.f_A_minus * m.sigma_A_minus * m.d_A_minus / alpha * dx.A_S;
    s[4] = 0.0;
    s[5] = (1.0 - m.nu) * m.f_H_minus * m.sigma_H_minus * m.d_H_minus / beta * dx.H_S;
    return s;
}

}  // namespace skewrd
