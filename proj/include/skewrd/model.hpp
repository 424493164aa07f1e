#pragma once

#include <array>
#include <string>

namespace skewrd {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double pi_sq = pi * pi;

enum class Species { juvenile = 0, adult = 1, host = 2 };

const char* to_string(Species s);

// Demography, diffusion, infection and interface constants plus the habitat geometry.
// Suffix _minus refers to the infected habitat [-ell, 0] x [0, 1], _plus to the
// susceptible habitat [0, L] x [0, 1].
struct ModelParameters {
    double sigma_J_minus = 0.6;
    double sigma_J_plus = 0.7;
    double sigma_A_minus = 0.8;
    double sigma_A_plus = 0.85;
    double sigma_H_minus = 0.9;
    double sigma_H_plus = 0.9;
    double tau_minus = 0.3;
    double tau_plus = 0.35;
    double f_A_minus = 2.0;
    double f_A_plus = 2.5;
    double f_H_minus = 1.5;
    double f_H_plus = 1.0;
    double nu = 0.2;
    double Lambda_J = 0.3;
    double Lambda_A = 0.4;
    double Lambda_H = 0.2;
    double d_J_minus = 0.5;
    double d_J_plus = 0.6;
    double d_A_minus = 0.8;
    double d_A_plus = 1.0;
    double d_H_minus = 0.2;
    double d_H_plus = 0.15;
    double p_J = 0.4;
    double p_A = 0.55;
    double p_H = 0.45;
    double ell = 1.0;
    double L = 1.0;
};

// Throws Error(invalid_params) naming the first offending field.
void validate(const ModelParameters& params);

struct InterfaceWeights {
    double juvenile_I, juvenile_S;
    double adult_I, adult_S;
    double host_I, host_S;
};

InterfaceWeights interface_weights(const ModelParameters& params);

// One diagonal block of the linear operator: d * Laplacian(u) - c * u on each
// habitat, with weight_I * du_I/dx = weight_S * du_S/dx across the interface.
struct SpeciesCoefficients {
    Species species = Species::host;
    double d_minus = 1.0;
    double d_plus = 1.0;
    double c_minus = 0.0;
    double c_plus = 0.0;
    double weight_I = 0.5;
    double weight_S = 0.5;
};

SpeciesCoefficients species_coefficients(const ModelParameters& params, Species species);

struct HypothesisReport {
    bool holds = false;
    double minus_operand = 0.0;
    double plus_operand = 0.0;
    double r0 = 0.0;
};

HypothesisReport check_hypothesis(const ModelParameters& params, double r0);

// Largest host growth-to-diffusion ratio from either habitat.
double host_growth_bound(const ModelParameters& params);

// max(operands, 0) plus a small margin, capped just below pi^2.
double default_r0(const ModelParameters& params);

// Same test expressed on block coefficients: max(-c_minus/d_minus, -c_plus/d_plus) <= r0.
bool coefficients_satisfy_hypothesis(const SpeciesCoefficients& coeffs, double r0);

struct InterfaceDerivatives {
    double J_I = 0.0, A_I = 0.0, H_I = 0.0;
    double J_S = 0.0, A_S = 0.0, H_S = 0.0;
};

struct TraceFluxes {
    double T1 = 0.0, T2 = 0.0, T3 = 0.0, T4 = 0.0, T5 = 0.0;
};

TraceFluxes trace_fluxes(const ModelParameters& params, const InterfaceDerivatives& dx);

// Interface sources added uniformly in x to each equation, ordered
// J_I, A_I, H_I, J_S, A_S, H_S.
using InterfaceSources = std::array<double, 6>;

InterfaceSources interface_sources(const ModelParameters& params, const InterfaceDerivatives& dx);

// Same sources written with each habitat's own one-sided derivatives, after
// eliminating the other side through the transmission conditions.
InterfaceSources interface_sources_substituted(const ModelParameters& params,
                                               const InterfaceDerivatives& dx);

}  // namespace skewrd
