#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewrd/model.hpp"

namespace skewrd {

// Outcome of one randomized inequality sweep. worst_margin is the smallest
// relative slack (lhs - rhs) / max(|lhs|, |rhs|) seen; negative means the
// inequality failed on that sample.
struct LemmaCheck {
    std::string name;
    long samples = 0;
    long violations = 0;
    double worst_margin = 0.0;
    double extreme_value = 0.0;  // check-specific extreme, e.g. min |f|
    bool passed() const { return samples > 0 && violations == 0; }
};

struct LemmaSweepOptions {
    long samples = 100000;
    std::uint64_t seed = 20240601;
    double epsilon0 = pi / 16.0;
    double slack = 1e-12;
    double modulus_min = 1e-3;
    double modulus_max = 1e6;
};

LemmaCheck verify_cosine_inequality(const LemmaSweepOptions& opts);

// The three bounds on 1 +- e^{-z} for z in S_alpha, alpha cycling over pi/6, pi/4, pi/3.
std::vector<LemmaCheck> verify_one_pm_exp(const LemmaSweepOptions& opts);

// The four statements on Z+- plus branch and case-one argument checks, over random
// admissible (z, lambda, coefficients, widths) with epsilon in (0, pi/2).
std::vector<LemmaCheck> verify_z_pm(const LemmaSweepOptions& opts);

// min |f_lambda| against sin(epsilon0 / 2) over lambda in S_{4(pi - epsilon0)/7}.
LemmaCheck verify_symbol_floor(const LemmaSweepOptions& opts);

std::vector<LemmaCheck> verify_all_lemmas(const LemmaSweepOptions& opts);

}  // namespace skewrd
