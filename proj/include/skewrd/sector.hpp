#pragma once

#include <complex>
#include <utility>

#include "skewrd/model.hpp"

namespace skewrd {

using cplx = std::complex<double>;

// Angle bookkeeping for the resolvent sector. epsilon is derived from epsilon0.
struct SectorConfig {
    double epsilon0 = pi / 16.0;
    double epsilon = pi / 7.0 + 6.0 * (pi / 16.0) / 7.0;
    double r0 = 1.0;
};

SectorConfig make_sector_config(double epsilon0, double r0);

// Half-opening of the sector the spectral parameter must lie in: 4(pi - epsilon0)/7.
double resolvent_angle(const SectorConfig& sector);

// Half-opening of the sector around pi^2 holding the symbol's argument: (pi - epsilon)/3.
double symbol_angle(const SectorConfig& sector);

// Floor on |Z+-|: sqrt(sqrt(3) (pi^2 - r0) / 2 * sin(epsilon / 2)).
double z_modulus_floor(double r0, double epsilon);

struct SpectralShift {
    cplx lambda;
    cplx lambda_minus;
    cplx lambda_plus;
};

// lambda_-+ = -c_-+/d_-+ - lambda/d_-+.
SpectralShift make_shift(cplx lambda, const SpeciesCoefficients& coeffs);

bool in_sector(cplx z, double omega);

// Returns (|z1 + z2|, (|z1| + |z2|) |cos((arg z1 - arg z2) / 2)|).
std::pair<double, double> cosine_lower_bound(cplx z1, cplx z2);

// 1 - exp(-w), accurate for small |w|.
cplx one_minus_exp_neg(cplx w);

struct OnePmExpBounds {
    double arg_gap;        // |arg(1 - e^-z) - arg(1 + e^-z)|, expected < alpha
    double plus_modulus;   // |1 + e^-z|
    double plus_floor;     // 1 - exp(-pi / (2 tan alpha))
    double minus_modulus;  // |1 - e^-z|
    double minus_lower;    // |z| cos(alpha) / (1 + |z| cos(alpha))
    double minus_upper;    // 2 |z| / (1 + |z| cos(alpha))
};

OnePmExpBounds one_pm_exp_bounds(cplx z, double alpha);

struct ZPair {
    cplx minus;
    cplx plus;
};

ZPair z_pm(cplx z, const SpectralShift& shift, const SectorConfig& sector);

cplx f_lambda(cplx z, const SpectralShift& shift, double beta_I, double beta_S, double ell,
              double L, const SectorConfig& sector);

// Symbol evaluation without sector checks; used at the spectrum points z = k^2 pi^2.
cplx symbol_value(cplx z, const SpectralShift& shift, double beta_I, double beta_S, double ell,
                  double L);

// Per-mode scalar values p_-+ = -sqrt(k^2 pi^2 - lambda_-+).
std::pair<cplx, cplx> mode_exponents(int k, const SpectralShift& shift);

cplx mode_determinant(int k, const SpectralShift& shift, double beta_I, double beta_S,
                      double ell, double L, const SectorConfig& sector);

}  // namespace skewrd
