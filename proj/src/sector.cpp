#include "skewrd/sector.hpp"

#include <cmath>
#include <string>

#include "skewrd/error.hpp"

namespace skewrd {

namespace {

std::string describe(cplx z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

void require_sector(cplx z, double omega, const char* what) {
    if (!in_sector(z, omega)) {
        fail(ErrorCode::sector_violation, std::string(what) + " = " + describe(z) +
                                              " outside sector of half-angle " +
                                              std::to_string(omega));
    }
}

}  // namespace

SectorConfig make_sector_config(double epsilon0, double r0) {
    if (!(epsilon0 > 0.0 && epsilon0 < pi / 8.0)) {
        fail(ErrorCode::invalid_argument,
             "epsilon0 = " + std::to_string(epsilon0) + " must lie in (0, pi/8)");
    }
    if (!(r0 > 0.0 && r0 < pi_sq)) {
        fail(ErrorCode::invalid_r0, "r0 = " + std::to_string(r0) + " must lie in (0, pi^2)");
    }
    SectorConfig s;
    s.epsilon0 = epsilon0;
    s.epsilon = pi / 7.0 + 6.0 * epsilon0 / 7.0;
    s.r0 = r0;
    return s;
}

double resolvent_angle(const SectorConfig& s) { return 4.0 * (pi - s.epsilon0) / 7.0; }

double symbol_angle(const SectorConfig& s) { return (pi - s.epsilon) / 3.0; }

double z_modulus_floor(double r0, double epsilon) {
    return std::sqrt(std::sqrt(3.0) * (pi_sq - r0) / 2.0 * std::sin(epsilon / 2.0));
}

SpectralShift make_shift(cplx lambda, const SpeciesCoefficients& c) {
    return {lambda, -c.c_minus / c.d_minus - lambda / c.d_minus,
            -c.c_plus / c.d_plus - lambda / c.d_plus};
}

bool in_sector(cplx z, double omega) {
    if (z == cplx(0.0, 0.0)) return false;
    if (omega == 0.0) return z.imag() == 0.0 && z.real() > 0.0;
    return std::abs(std::arg(z)) < omega;
}

std::pair<double, double> cosine_lower_bound(cplx z1, cplx z2) {
    if (z1 == cplx(0.0) || z2 == cplx(0.0)) {
        fail(ErrorCode::invalid_argument, "cosine inequality needs nonzero arguments");
    }
    const double lhs = std::abs(z1 + z2);
    const double rhs =
        (std::abs(z1) + std::abs(z2)) * std::abs(std::cos((std::arg(z1) - std::arg(z2)) / 2.0));
    return {lhs, rhs};
}

cplx one_minus_exp_neg(cplx w) {
    // 1 - e^{-w} = -(e^{-w} - 1), with e^{a+ib} - 1 = expm1(a) cos b - 2 sin^2(b/2) + i e^a sin b.
    const double a = -w.real();
    const double b = -w.imag();
    const double s = std::sin(b / 2.0);
    const double re = std::expm1(a) * std::cos(b) - 2.0 * s * s;
    const double im = std::exp(a) * std::sin(b);
    return -cplx(re, im);
}

OnePmExpBounds one_pm_exp_bounds(cplx z, double alpha) {
    if (!(alpha > 0.0 && alpha < pi / 2.0)) {
        fail(ErrorCode::invalid_argument, "alpha must lie in (0, pi/2)");
    }
    require_sector(z, alpha, "z");
    const cplx minus = one_minus_exp_neg(z);
    const cplx plus = 1.0 + std::exp(-z);
    const double r = std::abs(z);
    const double ca = std::cos(alpha);
    OnePmExpBounds b;
    b.arg_gap = std::abs(std::arg(minus) - std::arg(plus));
    b.plus_modulus = std::abs(plus);
    b.plus_floor = -std::expm1(-pi / (2.0 * std::tan(alpha)));
    b.minus_modulus = std::abs(minus);
    b.minus_lower = r * ca / (1.0 + r * ca);
    b.minus_upper = 2.0 * r / (1.0 + r * ca);
    return b;
}

ZPair z_pm(cplx z, const SpectralShift& shift, const SectorConfig& sector) {
    require_sector(z - pi_sq, symbol_angle(sector), "z - pi^2");
    require_sector(shift.lambda, 2.0 * (pi - sector.epsilon) / 3.0, "lambda");
    return {std::sqrt(z - shift.lambda_minus), std::sqrt(z - shift.lambda_plus)};
}

cplx symbol_value(cplx z, const SpectralShift& shift, double beta_I, double beta_S, double ell,
                  double L) {
    const cplx zm = std::sqrt(z - shift.lambda_minus);
    const cplx zp = std::sqrt(z - shift.lambda_plus);
    const cplx em = std::exp(-2.0 * ell * zm);
    const cplx ep = std::exp(-2.0 * L * zp);
    const cplx ratio = (one_minus_exp_neg(2.0 * ell * zm) * (1.0 + ep)) /
                       ((1.0 + em) * one_minus_exp_neg(2.0 * L * zp));
    return 1.0 + (beta_S / beta_I) * (zp / zm) * ratio;
}

cplx f_lambda(cplx z, const SpectralShift& shift, double beta_I, double beta_S, double ell,
              double L, const SectorConfig& sector) {
    z_pm(z, shift, sector);
    return symbol_value(z, shift, beta_I, beta_S, ell, L);
}

std::pair<cplx, cplx> mode_exponents(int k, const SpectralShift& shift) {
    const double z = static_cast<double>(k) * k * pi_sq;
    return {-std::sqrt(z - shift.lambda_minus), -std::sqrt(z - shift.lambda_plus)};
}

cplx mode_determinant(int k, const SpectralShift& shift, double beta_I, double beta_S,
                      double ell, double L, const SectorConfig& sector) {
    if (k < 1) fail(ErrorCode::invalid_argument, "mode index must be >= 1");
    require_sector(shift.lambda, resolvent_angle(sector), "lambda");
    const auto [pm, pp] = mode_exponents(k, shift);
    const double z = static_cast<double>(k) * k * pi_sq;
    const cplx det = beta_I * (1.0 + std::exp(2.0 * ell * pm)) *
                     one_minus_exp_neg(-2.0 * L * pp) *
                     symbol_value(z, shift, beta_I, beta_S, ell, L);
    if (!(std::abs(det) >= 1e-300)) {
        fail(ErrorCode::determinant_underflow,
             "mode " + std::to_string(k) + " determinant modulus below 1e-300");
    }
    return det;
}

}  // namespace skewrd
