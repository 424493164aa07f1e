#pragma once

#include <cstdint>
#include <vector>

#include "skewrd/mode_solver.hpp"
#include "skewrd/resolvent.hpp"
#include "skewrd/sector.hpp"

namespace skewrd {

// A random smooth mode problem: forcing sum_m c_m cos(m kappa x + phase_m), m = 0..3.
struct OracleCase {
    int k = 1;
    cplx lambda{1.0, 0.0};
    SpeciesCoefficients coeffs;
    double ell = 1.0;
    double L = 1.0;
    double kappa = 1.0;
    cplx amplitude[4];
    double phase[4] = {0, 0, 0, 0};

    cplx forcing(double x) const;
};

struct OracleComparison {
    OracleCase problem;
    double relative_error = 0.0;     // discrete L2 over both intervals
    double continuity_defect = 0.0;  // |h_I(0) - h_S(0)|
    double flux_defect = 0.0;        // |w_I h_I'(0) - w_S h_S'(0)|
    double stencil_flux_defect = 0.0;  // same with one-sided differences of the samples
    double h = 0.0;                  // oracle spacing
};

// Mode indices cycle through 1, 3, 10, 40 and arguments through 0, +-pi/3 and
// +-(resolvent angle - 0.01); |lambda| is log-uniform on [1, 1e3].
std::vector<OracleCase> random_oracle_cases(std::uint64_t seed, long count, const SectorConfig& sector);

// The spectral solution uses quadrature four times finer than the oracle grid. The
// reference is the Richardson extrapolation of the oracle on n and 2n cells.
OracleComparison compare_with_oracle(const OracleCase& c, Eigen::Index n_oracle);

struct RayTrend {
    double min_product = 0.0;
    double max_product = 0.0;
    double slope = 0.0;  // least squares of log product against log |lambda|
};

RayTrend ray_trend(const std::vector<NormSample>& samples);

// Magnitudes log-spaced on [magnitude_min, magnitude_max], ray by ray.
std::vector<cplx> ray_lambdas(const std::vector<double>& angles, double magnitude_min,
                              double magnitude_max, long points_per_ray);

// ||R(l1)psi - R(l2)psi - (l1 - l2) R(l1)R(l2)psi|| / ||psi|| over all species. The
// intermediate field R(l2)psi is produced on an x-grid refined by the given factor and
// R(l1) of it is read back at the coarse nodes.
double resolvent_identity_defect(cplx lambda1, cplx lambda2, const ModelParameters& params,
                                 const SpeciesTriple& psi, const SectorConfig& sector, int K,
                                 Eigen::Index refinement);

}  // namespace skewrd
