#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "skewrd/grid.hpp"
#include "skewrd/model.hpp"
#include "skewrd/sector.hpp"

namespace skewrd {

using ComplexField = SpeciesField<cplx>;
using SpeciesTriple = std::array<ComplexField, 3>;  // juvenile, adult, host

// Solves d Laplacian(phi) - (c + lambda) phi = rhs for one species block by sine modes
// k = 1..K in y and the exact two-interval representation per mode. The output grid
// has output_refinement times as many x-cells as rhs, with the same y-grid.
ComplexField resolve_species(cplx lambda, const SpeciesCoefficients& coeffs,
                             const ComplexField& rhs, const SectorConfig& sector, int K,
                             Eigen::Index output_refinement = 1);

SpeciesTriple resolve_full(cplx lambda, const ModelParameters& params, const SpeciesTriple& psi,
                           const SectorConfig& sector, int K, Eigen::Index output_refinement = 1);

// max over species of the discrete L2 norm on both habitats.
double energy_norm(const SpeciesTriple& fields);

struct TransmissionDefect {
    double continuity = 0.0;
    double flux = 0.0;
};

// Max over y of |phi_I(0) - phi_S(0)| and |w_I D^- phi_I - w_S D^+ phi_S|.
TransmissionDefect transmission_defect(const ComplexField& phi, double weight_I, double weight_S);

// ||Lap_h phi - (lambda + c)/d phi - rhs/d|| / ||rhs/d|| over interior nodes, 5-point Laplacian.
double fd_residual(const ComplexField& phi, const ComplexField& rhs, cplx lambda,
                   const SpeciesCoefficients& coeffs);

struct ResolventGrid {
    Eigen::Index nx_I = 128;
    Eigen::Index nx_S = 128;
    Eigen::Index ny = 128;
};

struct NormSample {
    cplx lambda;
    double norm_estimate = 0.0;
    double product = 0.0;  // (1 + |lambda|) * norm_estimate
};

struct NormEstimateOptions {
    int modes = 32;
    int probes = 32;
    int power_steps = 20;
    std::uint64_t seed = 7;
};

std::vector<NormSample> estimate_resolvent_norm(const std::vector<cplx>& lambdas,
                                                const ModelParameters& params,
                                                const SectorConfig& sector,
                                                const ResolventGrid& grid,
                                                const NormEstimateOptions& opts);

// Smooth pseudo-random data: low sine modes in y times low-order trigonometric
// profiles in x on each habitat, zero on the outer boundary.
ComplexField smooth_random_field(std::uint64_t seed, double ell, double L, Eigen::Index nx_I,
                                 Eigen::Index nx_S, Eigen::Index ny, int y_modes = 2);

// Gaussian noise on interior nodes, zero on the outer boundary.
ComplexField noise_field(std::uint64_t seed, double ell, double L, Eigen::Index nx_I,
                         Eigen::Index nx_S, Eigen::Index ny);

}  // namespace skewrd
