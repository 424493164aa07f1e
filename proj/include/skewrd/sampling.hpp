#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace skewrd {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

// Modulus log-uniform in [lo, hi], argument uniform in the open interval (-omega, omega).
inline std::complex<double> sample_sector(Rng& rng, double omega, double lo, double hi) {
    double theta = 0.0;
    do {
        theta = uniform(rng, -omega, omega);
    } while (!(std::abs(theta) < omega));
    return std::polar(log_uniform(rng, lo, hi), theta);
}

}  // namespace skewrd
