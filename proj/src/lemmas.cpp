#include "skewrd/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewrd/sampling.hpp"
#include "skewrd/sector.hpp"

namespace skewrd {

namespace {

class Tally {
public:
    Tally(std::string name, double slack) : slack_(slack) { check_.name = std::move(name); }

    // Records lhs >= rhs (or lhs > rhs when strict; rounding slack applies to both).
    void at_least(double lhs, double rhs) {
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        record((lhs - rhs) / scale);
    }

    void at_most(double lhs, double rhs) { at_least(rhs, lhs); }

    void holds(bool ok) { record(ok ? 1.0 : -1.0); }

    void extreme_min(double v) {
        check_.extreme_value = seen_ ? std::min(check_.extreme_value, v) : v;
        seen_ = true;
    }

    LemmaCheck result() const { return check_; }
    long count() const { return check_.samples; }

private:
    void record(double margin) {
        if (check_.samples == 0 || margin < check_.worst_margin) check_.worst_margin = margin;
        ++check_.samples;
        if (margin < -slack_) ++check_.violations;
    }

    LemmaCheck check_;
    double slack_;
    bool seen_ = false;
};

struct AdmissibleDraw {
    cplx z;
    SpectralShift shift;
    double r0;
    double epsilon;
    double beta_I;
    double beta_S;
    double ell;
    double L;
};

// Coefficients satisfy -c/d <= r0 on each side; z - pi^2 and lambda sit in their sectors.
AdmissibleDraw draw_admissible(Rng& rng, double epsilon, double lambda_angle,
                               const LemmaSweepOptions& opts) {
    AdmissibleDraw d;
    d.epsilon = epsilon;
    d.r0 = uniform(rng, 1e-3, pi_sq - 1e-3);
    SpeciesCoefficients c;
    c.d_minus = log_uniform(rng, 0.05, 20.0);
    c.d_plus = log_uniform(rng, 0.05, 20.0);
    c.c_minus = c.d_minus * uniform(rng, -d.r0, 10.0);
    c.c_plus = c.d_plus * uniform(rng, -d.r0, 10.0);
    d.beta_I = log_uniform(rng, 1e-2, 1e2);
    d.beta_S = log_uniform(rng, 1e-2, 1e2);
    d.ell = log_uniform(rng, 0.1, 10.0);
    d.L = log_uniform(rng, 0.1, 10.0);
    d.z = pi_sq + sample_sector(rng, (pi - epsilon) / 3.0, opts.modulus_min, opts.modulus_max);
    const cplx lambda = sample_sector(rng, lambda_angle, opts.modulus_min, opts.modulus_max);
    d.shift = make_shift(lambda, c);
    return d;
}

}  // namespace

LemmaCheck verify_cosine_inequality(const LemmaSweepOptions& opts) {
    Rng rng(opts.seed);
    Tally t("cosine-inequality", opts.slack);
    for (long i = 0; i < opts.samples; ++i) {
        const cplx z1 = sample_sector(rng, pi, opts.modulus_min, opts.modulus_max);
        const cplx z2 = sample_sector(rng, pi, opts.modulus_min, opts.modulus_max);
        const auto [lhs, rhs] = cosine_lower_bound(z1, z2);
        // Cancellation in z1 + z2 carries absolute error of order eps * (|z1| + |z2|).
        const double floor = 4.0 * std::numeric_limits<double>::epsilon() *
                             (std::abs(z1) + std::abs(z2));
        t.at_least(lhs + floor, rhs);
    }
    return t.result();
}

std::vector<LemmaCheck> verify_one_pm_exp(const LemmaSweepOptions& opts) {
    Rng rng(opts.seed + 1);
    Tally gap("one-pm-exp/arg-gap", opts.slack);
    Tally plus("one-pm-exp/plus-floor", opts.slack);
    Tally lower("one-pm-exp/minus-lower", opts.slack);
    Tally upper("one-pm-exp/minus-upper", opts.slack);
    const double alphas[3] = {pi / 6.0, pi / 4.0, pi / 3.0};
    for (long i = 0; i < opts.samples; ++i) {
        const double alpha = alphas[i % 3];
        const cplx z = sample_sector(rng, alpha, opts.modulus_min, opts.modulus_max);
        const OnePmExpBounds b = one_pm_exp_bounds(z, alpha);
        gap.at_most(b.arg_gap, alpha);
        plus.at_least(b.plus_modulus, b.plus_floor);
        lower.at_least(b.minus_modulus, b.minus_lower);
        upper.at_most(b.minus_modulus, b.minus_upper);
    }
    return {gap.result(), plus.result(), lower.result(), upper.result()};
}

std::vector<LemmaCheck> verify_z_pm(const LemmaSweepOptions& opts) {
    Rng rng(opts.seed + 2);
    Tally modulus("z-pm/modulus-floor", opts.slack);
    Tally gap("z-pm/arg-gap", opts.slack);
    Tally plus("z-pm/plus-floor", opts.slack);
    Tally bracket("z-pm/minus-bracket", opts.slack);
    Tally branch("z-pm/principal-branch", opts.slack);
    Tally ratio("z-pm/ratio-argument", opts.slack);
    const double uniform_floor = -std::expm1(-pi / (2.0 * std::sqrt(3.0)));
    for (long i = 0; i < opts.samples; ++i) {
        const double epsilon = uniform(rng, 1e-3, pi / 2.0 - 1e-3);
        const double angle = (pi - epsilon) / 3.0;
        const AdmissibleDraw d = draw_admissible(rng, epsilon, 2.0 * angle, opts);
        SectorConfig sector;
        sector.epsilon = epsilon;
        sector.r0 = d.r0;
        const ZPair zs = z_pm(d.z, d.shift, sector);
        const double floor = z_modulus_floor(d.r0, epsilon);
        const double plus_floor = -std::expm1(-pi / (2.0 * std::tan(angle)));

        const cplx sides[2] = {zs.minus, zs.plus};
        const double widths[2] = {d.ell, d.L};
        for (int s = 0; s < 2; ++s) {
            const cplx Z = sides[s];
            const double w = widths[s];
            modulus.at_least(std::abs(Z), floor);
            branch.holds(Z.real() > 0.0 && in_sector(Z, angle));
            const cplx arg2 = 2.0 * w * Z;
            const cplx minus = one_minus_exp_neg(arg2);
            const cplx plus_value = 1.0 + std::exp(-arg2);
            gap.at_most(std::abs(std::arg(minus) - std::arg(plus_value)), angle);
            plus.at_least(std::abs(plus_value), plus_floor);
            plus.at_least(plus_floor, uniform_floor);
            const double wz = w * std::abs(Z);
            bracket.at_least(std::abs(minus), wz / (1.0 + wz));
            bracket.at_most(std::abs(minus), 4.0 * wz / (1.0 + wz));
        }
        if (std::arg(d.shift.lambda) >= -pi / 3.0 + epsilon / 3.0)
            ratio.at_most(std::abs(std::arg(zs.plus / zs.minus)), pi / 2.0 - epsilon / 2.0);
    }
    // The ratio statement only covers part of the sector; keep drawing until it has its full count.
    while (ratio.count() < opts.samples) {
        const double epsilon = uniform(rng, 1e-3, pi / 2.0 - 1e-3);
        const AdmissibleDraw d = draw_admissible(rng, epsilon, 2.0 * (pi - epsilon) / 3.0, opts);
        if (std::arg(d.shift.lambda) < -pi / 3.0 + epsilon / 3.0) continue;
        SectorConfig sector;
        sector.epsilon = epsilon;
        sector.r0 = d.r0;
        const ZPair zs = z_pm(d.z, d.shift, sector);
        ratio.at_most(std::abs(std::arg(zs.plus / zs.minus)), pi / 2.0 - epsilon / 2.0);
    }
    return {modulus.result(), gap.result(),    plus.result(),
            bracket.result(), branch.result(), ratio.result()};
}

LemmaCheck verify_symbol_floor(const LemmaSweepOptions& opts) {
    Rng rng(opts.seed + 3);
    const SectorConfig base = make_sector_config(opts.epsilon0, 1.0);
    const double floor = std::sin(opts.epsilon0 / 2.0);
    Tally t("symbol-floor", opts.slack);
    for (long i = 0; i < opts.samples; ++i) {
        const AdmissibleDraw d = draw_admissible(rng, base.epsilon, resolvent_angle(base), opts);
        SectorConfig sector = base;
        sector.r0 = d.r0;
        const double m =
            std::abs(f_lambda(d.z, d.shift, d.beta_I, d.beta_S, d.ell, d.L, sector));
        t.at_least(m, floor);
        t.extreme_min(m);
    }
    return t.result();
}

std::vector<LemmaCheck> verify_all_lemmas(const LemmaSweepOptions& opts) {
    std::vector<LemmaCheck> out;
    out.push_back(verify_cosine_inequality(opts));
    for (auto& c : verify_one_pm_exp(opts)) out.push_back(c);
    for (auto& c : verify_z_pm(opts)) out.push_back(c);
    out.push_back(verify_symbol_floor(opts));
    return out;
}

}  // namespace skewrd
