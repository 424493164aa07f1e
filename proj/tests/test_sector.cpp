#include <catch_amalgamated.hpp>

#include <cmath>

#include "skewrd/error.hpp"
#include "skewrd/sampling.hpp"
#include "skewrd/sector.hpp"

using namespace skewrd;
using Catch::Approx;

namespace {

SpectralShift unit_shift(cplx lambda) {
    SpeciesCoefficients c;
    c.d_minus = c.d_plus = 1.0;
    c.c_minus = c.c_plus = 0.0;
    return make_shift(lambda, c);
}

}  // namespace

TEST_CASE("sector membership", "[sector]") {
    REQUIRE(in_sector(1.0, 0.0));
    REQUIRE_FALSE(in_sector(cplx(1.0, 1e-300), 0.0));
    REQUIRE_FALSE(in_sector(-1.0, pi / 2.0));
    REQUIRE(in_sector(cplx(0.0, 1.0), 3.0 * pi / 4.0));
    REQUIRE_FALSE(in_sector(0.0, pi));
    REQUIRE_FALSE(in_sector(cplx(0.0, 1.0), pi / 2.0));
    REQUIRE(in_sector(cplx(-1.0, 1e-3), pi));
}

TEST_CASE("sector config derives epsilon and checks its range", "[sector]") {
    const SectorConfig s = make_sector_config(pi / 16.0, 1.0);
    REQUIRE(s.epsilon == Approx(pi / 7.0 + 6.0 * (pi / 16.0) / 7.0));
    REQUIRE(resolvent_angle(s) > pi / 2.0);
    REQUIRE_THROWS_AS(make_sector_config(pi / 8.0, 1.0), Error);
    REQUIRE_THROWS_AS(make_sector_config(pi / 16.0, pi_sq), Error);
    for (double e0 : {1e-6, pi / 32.0, pi / 8.0 - 1e-9}) {
        REQUIRE(resolvent_angle(make_sector_config(e0, 1.0)) > pi / 2.0);
    }
}

TEST_CASE("cosine inequality examples", "[sector]") {
    auto [a, b] = cosine_lower_bound(1.0, 1.0);
    REQUIRE(a == Approx(2.0));
    REQUIRE(b == Approx(2.0));
    std::tie(a, b) = cosine_lower_bound(1.0, cplx(0.0, 1.0));
    REQUIRE(a == Approx(std::sqrt(2.0)));
    REQUIRE(b == Approx(std::sqrt(2.0)));
    std::tie(a, b) = cosine_lower_bound(1.0, -1.0);
    REQUIRE(a == Approx(0.0).margin(1e-15));
    REQUIRE(b == Approx(0.0).margin(1e-15));
    REQUIRE_THROWS_AS(cosine_lower_bound(0.0, 1.0), Error);
}

TEST_CASE("cosine inequality on random pairs", "[sector]") {
    Rng rng(101);
    for (int n = 0; n < 100000; ++n) {
        const cplx z1 = std::polar(log_uniform(rng, 1e-3, 1e6), uniform(rng, -pi, pi));
        const cplx z2 = std::polar(log_uniform(rng, 1e-3, 1e6), uniform(rng, -pi, pi));
        const auto [lhs, rhs] = cosine_lower_bound(z1, z2);
        REQUIRE(lhs + 4e-16 * (std::abs(z1) + std::abs(z2)) >= rhs * (1.0 - 1e-12));
    }
}

TEST_CASE("one plus minus exp bounds at z = 1", "[sector]") {
    const OnePmExpBounds b = one_pm_exp_bounds(1.0, pi / 3.0);
    REQUIRE(b.arg_gap == 0.0);
    REQUIRE(b.plus_modulus == Approx(1.3678794411714423).epsilon(1e-14));
    REQUIRE(b.plus_floor == Approx(0.59622588638995136).epsilon(1e-14));
    REQUIRE(b.minus_modulus == Approx(0.63212055882855768).epsilon(1e-14));
    REQUIRE(b.minus_lower == Approx(1.0 / 3.0).epsilon(1e-14));
    REQUIRE(b.minus_upper == Approx(4.0 / 3.0).epsilon(1e-14));
    REQUIRE(b.plus_modulus >= b.plus_floor);
    REQUIRE(b.minus_lower <= b.minus_modulus);
    REQUIRE(b.minus_modulus <= b.minus_upper);
}

TEST_CASE("one plus minus exp bounds at small z", "[sector]") {
    const OnePmExpBounds b = one_pm_exp_bounds(0.01, pi / 4.0);
    REQUIRE(b.plus_modulus == Approx(1.9900498337491681).epsilon(1e-14));
    REQUIRE(b.plus_floor == Approx(0.79212042364923809).epsilon(1e-14));
    REQUIRE(b.minus_modulus == Approx(0.0099501662508319464).epsilon(1e-13));
    REQUIRE(b.minus_lower == Approx(0.0070214188828096157).epsilon(1e-14));
    REQUIRE(b.minus_upper == Approx(0.019859571622343808).epsilon(1e-14));
}

TEST_CASE("one plus minus exp bounds saturate for large z", "[sector]") {
    const OnePmExpBounds b = one_pm_exp_bounds(50.0, pi / 3.0);
    REQUIRE(b.plus_modulus == Approx(1.0).epsilon(1e-15));
    REQUIRE(b.minus_modulus == Approx(1.0).epsilon(1e-15));
    REQUIRE(b.minus_lower == Approx(0.96153846153846154).epsilon(1e-14));
    REQUIRE(b.minus_upper == Approx(3.8461538461538462).epsilon(1e-14));
    REQUIRE(b.plus_modulus >= 1.0 - std::exp(-pi / (2.0 * std::sqrt(3.0))));
}

TEST_CASE("one plus minus exp bounds off the real axis", "[sector]") {
    const OnePmExpBounds b = one_pm_exp_bounds(cplx(1.0, 1.0), pi / 3.0);
    REQUIRE(b.arg_gap == Approx(0.62139884992212273).epsilon(1e-13));
    REQUIRE(b.arg_gap < pi / 3.0);
    REQUIRE(b.plus_modulus == Approx(1.2380902648552886).epsilon(1e-14));
    REQUIRE(b.minus_modulus == Approx(0.85895463357722613).epsilon(1e-14));
    REQUIRE(b.minus_lower == Approx(0.41421356237309505).epsilon(1e-14));
    REQUIRE(b.minus_upper == Approx(1.6568542494923802).epsilon(1e-14));
}

TEST_CASE("one plus minus exp rejects points outside the sector", "[sector]") {
    try {
        one_pm_exp_bounds(cplx(1.0, 2.0), pi / 4.0);
        FAIL("expected sector violation");
    } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::sector_violation);
    }
    REQUIRE_THROWS_AS(one_pm_exp_bounds(1.0, pi / 2.0), Error);
}

TEST_CASE("one minus exp is accurate near zero", "[sector]") {
    const cplx w(1e-12, -2e-12);
    const cplx v = one_minus_exp_neg(w);
    REQUIRE(std::abs(v - w) <= 1e-23);
}

TEST_CASE("Z values in the all-real case", "[sector]") {
    const SectorConfig s = make_sector_config(pi / 16.0, 1.0);
    const ZPair z = z_pm(pi_sq + 1.0, unit_shift(1.0), s);
    REQUIRE(z.minus.real() == Approx(3.4452292233013116).epsilon(1e-14));
    REQUIRE(z.minus.imag() == 0.0);
    REQUIRE(z.plus == z.minus);
}

TEST_CASE("Z modulus floor value", "[sector]") {
    REQUIRE(z_modulus_floor(1.0, pi / 6.0) == Approx(1.4099884533082653).epsilon(1e-14));
}

TEST_CASE("Z values reject inputs outside their sectors", "[sector]") {
    const SectorConfig s = make_sector_config(pi / 16.0, 1.0);
    REQUIRE_THROWS_AS(z_pm(pi_sq - 1.0, unit_shift(1.0), s), Error);
    REQUIRE_THROWS_AS(z_pm(pi_sq + 1.0, unit_shift(-1.0), s), Error);
}

TEST_CASE("symbol collapses in the symmetric case", "[sector]") {
    const SectorConfig s = make_sector_config(pi / 16.0, 1.0);
    const SpectralShift sh = unit_shift(cplx(2.0, 3.0));
    const cplx z = pi_sq + cplx(4.0, 1.0);
    REQUIRE(std::abs(f_lambda(z, sh, 2.0, 3.0, 1.3, 1.3, s) - 2.5) < 1e-13);
    REQUIRE(std::abs(f_lambda(z, sh, 1.0, 1.0, 0.7, 0.7, s) - 2.0) < 1e-13);
}

TEST_CASE("symbol floor on random admissible points", "[sector]") {
    const SectorConfig s = make_sector_config(pi / 16.0, 1.0);
    Rng rng(17);
    for (int n = 0; n < 2000; ++n) {
        const cplx lambda = sample_sector(rng, resolvent_angle(s), 1e-3, 1e6);
        SpeciesCoefficients c;
        c.d_minus = log_uniform(rng, 0.05, 20.0);
        c.d_plus = log_uniform(rng, 0.05, 20.0);
        const SpectralShift sh = make_shift(lambda, c);
        const int k = 1 + static_cast<int>(uniform(rng, 0.0, 50.0));
        const cplx f = symbol_value(static_cast<double>(k * k) * pi_sq, sh,
                                    log_uniform(rng, 1e-2, 1e2), log_uniform(rng, 1e-2, 1e2),
                                    log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0));
        REQUIRE(std::abs(f) >= std::sin(s.epsilon0 / 2.0));
    }
}

TEST_CASE("mode determinant in the symmetric case", "[sector]") {
    const SectorConfig s = make_sector_config(pi / 16.0, 1.0);
    const SpectralShift sh = unit_shift(cplx(3.0, -2.0));
    const int k = 2;
    const auto [pm, pp] = mode_exponents(k, sh);
    const cplx expected = 0.4 * (1.0 + std::exp(2.0 * pm)) * (1.0 - std::exp(2.0 * pp)) * 2.0;
    REQUIRE(std::abs(mode_determinant(k, sh, 0.4, 0.4, 1.0, 1.0, s) - expected) <
            1e-14 * std::abs(expected));
}

TEST_CASE("mode determinant approaches its high-mode limit", "[sector]") {
    const SectorConfig s = make_sector_config(pi / 16.0, 1.0);
    SpeciesCoefficients c;
    c.d_minus = 0.5;
    c.d_plus = 2.0;
    c.c_minus = 0.2;
    c.c_plus = -0.3;
    const SpectralShift sh = make_shift(cplx(5.0, 5.0), c);
    const int k = 200;
    const auto [pm, pp] = mode_exponents(k, sh);
    const cplx limit = 0.3 * (1.0 + 0.6 / 0.3 * (pp / pm));
    const cplx d = mode_determinant(k, sh, 0.3, 0.6, 1.0, 1.0, s);
    REQUIRE(std::abs(d - limit) < 1e-12 * std::abs(limit));
}

TEST_CASE("mode determinant never vanishes on random admissible parameters", "[sector]") {
    const SectorConfig s = make_sector_config(pi / 16.0, 1.0);
    Rng rng(23);
    for (int n = 0; n < 200; ++n) {
        SpeciesCoefficients c;
        c.d_minus = log_uniform(rng, 0.05, 20.0);
        c.d_plus = log_uniform(rng, 0.05, 20.0);
        c.c_minus = c.d_minus * uniform(rng, -s.r0, 10.0);
        c.c_plus = c.d_plus * uniform(rng, -s.r0, 10.0);
        const cplx lambda = sample_sector(rng, resolvent_angle(s), 1e-2, 1e4);
        const SpectralShift sh = make_shift(lambda, c);
        const double bI = log_uniform(rng, 1e-2, 1e2), bS = log_uniform(rng, 1e-2, 1e2);
        for (int k = 1; k <= 100; ++k) {
            REQUIRE(std::abs(mode_determinant(k, sh, bI, bS, 1.0, 1.5, s)) > 0.0);
        }
    }
}

TEST_CASE("mode exponents decay", "[sector]") {
    Rng rng(31);
    for (int n = 0; n < 1000; ++n) {
        const cplx lambda = sample_sector(rng, resolvent_angle(SectorConfig{}), 1e-3, 1e6);
        const auto [pm, pp] = mode_exponents(1, unit_shift(lambda));
        REQUIRE(pm.real() < 0.0);
        REQUIRE(pp.real() < 0.0);
    }
}
