#include "skewrd/verification.hpp"

#include <algorithm>
#include <cmath>

#include "skewrd/bvp_oracle.hpp"
#include "skewrd/error.hpp"
#include "skewrd/sampling.hpp"

namespace skewrd {

cplx OracleCase::forcing(double x) const {
    cplx g = 0.0;
    for (int m = 0; m < 4; ++m) g += amplitude[m] * std::cos(m * kappa * x + phase[m]);
    return g;
}

std::vector<OracleCase> random_oracle_cases(std::uint64_t seed, long count, const SectorConfig& sector) {
    Rng rng(seed);
    const int modes[4] = {1, 3, 10, 40};
    const double edge = resolvent_angle(sector) - 0.01;
    const double angles[5] = {0.0, pi / 3.0, -pi / 3.0, edge, -edge};
    std::vector<OracleCase> out;
    for (long n = 0; n < count; ++n) {
        OracleCase c;
        c.k = modes[n % 4];
        c.lambda = std::polar(log_uniform(rng, 1.0, 1e3), angles[n % 5]);
        c.coeffs.d_minus = log_uniform(rng, 0.1, 5.0);
        c.coeffs.d_plus = log_uniform(rng, 0.1, 5.0);
        c.coeffs.c_minus = c.coeffs.d_minus * uniform(rng, -0.9 * sector.r0, 5.0);
        c.coeffs.c_plus = c.coeffs.d_plus * uniform(rng, -0.9 * sector.r0, 5.0);
        c.coeffs.weight_I = log_uniform(rng, 0.05, 5.0);
        c.coeffs.weight_S = log_uniform(rng, 0.05, 5.0);
        c.ell = uniform(rng, 0.5, 2.0);
        c.L = uniform(rng, 0.5, 2.0);
        c.kappa = uniform(rng, 0.5, 3.0);
        for (int m = 0; m < 4; ++m) {
            c.amplitude[m] = cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
            c.phase[m] = uniform(rng, -pi, pi);
        }
        out.push_back(c);
    }
    return out;
}

namespace {

Eigen::VectorXcd sample(const OracleCase& c, double x0, double x1, Eigen::Index n, double scale) {
    Eigen::VectorXcd g(n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) g(i) = scale * c.forcing(x0 + (x1 - x0) * static_cast<double>(i) / n);
    return g;
}

}  // namespace

OracleComparison compare_with_oracle(const OracleCase& c, Eigen::Index n) {
    OracleComparison r;
    r.problem = c;
    r.h = std::max(c.ell, c.L) / static_cast<double>(n);
    const Eigen::Index nq = 4 * n;
    const ModeProblem mp = make_mode_problem(c.k, c.lambda, c.coeffs, sample(c, -c.ell, 0.0, nq, 1.0),
                                             sample(c, 0.0, c.L, nq, 1.0), c.ell, c.L);
    const ModeSolution sol = solve_mode(mp);

    auto oracle = [&](Eigen::Index m) {
        TwoIntervalBVP<cplx> b;
        b.omega_minus_sq = mp.p_minus * mp.p_minus;
        b.omega_plus_sq = mp.p_plus * mp.p_plus;
        b.g_I = sample(c, -c.ell, 0.0, m, 1.0 / c.coeffs.d_minus);
        b.g_S = sample(c, 0.0, c.L, m, 1.0 / c.coeffs.d_plus);
        b.beta_I = c.coeffs.weight_I;
        b.beta_S = c.coeffs.weight_S;
        b.ell = c.ell;
        b.L = c.L;
        return solve_fd(b);
    };
    const auto [cI, cS] = oracle(n);
    const auto [fI, fS] = oracle(2 * n);
    Eigen::VectorXcd refI(n + 1), refS(n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
        refI(i) = (4.0 * fI(2 * i) - cI(i)) / 3.0;
        refS(i) = (4.0 * fS(2 * i) - cS(i)) / 3.0;
    }
    const Eigen::VectorXcd hI = sol.sample_I(n), hS = sol.sample_S(n);
    const double wI = c.ell / static_cast<double>(n), wS = c.L / static_cast<double>(n);
    const double num = wI * (hI - refI).squaredNorm() + wS * (hS - refS).squaredNorm();
    const double den = wI * refI.squaredNorm() + wS * refS.squaredNorm();
    r.relative_error = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    r.continuity_defect = std::abs(sol.h_I(0.0) - sol.h_S(0.0));
    r.flux_defect = std::abs(c.coeffs.weight_I * sol.dh_I(0.0) - c.coeffs.weight_S * sol.dh_S(0.0));
    r.stencil_flux_defect = std::abs(c.coeffs.weight_I * left_trace_derivative(hI, wI) -
                                     c.coeffs.weight_S * right_trace_derivative(hS, wS));
    return r;
}

RayTrend ray_trend(const std::vector<NormSample>& samples) {
    RayTrend t;
    if (samples.empty()) return t;
    t.min_product = t.max_product = samples.front().product;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        t.min_product = std::min(t.min_product, s.product);
        t.max_product = std::max(t.max_product, s.product);
        const double x = std::log(std::abs(s.lambda)), y = std::log(s.product);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(samples.size());
    const double den = n * sxx - sx * sx;
    t.slope = den > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    return t;
}

std::vector<cplx> ray_lambdas(const std::vector<double>& angles, double magnitude_min,
                              double magnitude_max, long points_per_ray) {
    if (points_per_ray < 2 || !(magnitude_min > 0.0) || !(magnitude_max >= magnitude_min))
        fail(ErrorCode::invalid_argument, "ray sampling needs 0 < min <= max and at least two points");
    std::vector<cplx> out;
    const double a = std::log(magnitude_min), b = std::log(magnitude_max);
    for (double angle : angles)
        for (long i = 0; i < points_per_ray; ++i)
            out.push_back(std::polar(std::exp(a + (b - a) * static_cast<double>(i) / (points_per_ray - 1)), angle));
    return out;
}

double resolvent_identity_defect(cplx lambda1, cplx lambda2, const ModelParameters& params,
                                 const SpeciesTriple& psi, const SectorConfig& sector, int K,
                                 Eigen::Index refinement) {
    double num = 0.0, den = 0.0;
    for (int s = 0; s < 3; ++s) {
        const SpeciesCoefficients c = species_coefficients(params, static_cast<Species>(s));
        const ComplexField r1 = resolve_species(lambda1, c, psi[s], sector, K);
        const ComplexField r2 = resolve_species(lambda2, c, psi[s], sector, K);
        const ComplexField r2_fine = resolve_species(lambda2, c, psi[s], sector, K, refinement);
        const ComplexField r12_fine = resolve_species(lambda1, c, r2_fine, sector, K);
        ComplexField defect = r1 - r2;
        for (Eigen::Index i = 0; i <= defect.I.nx(); ++i)
            defect.I.values.row(i) -= (lambda1 - lambda2) * r12_fine.I.values.row(refinement * i);
        for (Eigen::Index i = 0; i <= defect.S.nx(); ++i)
            defect.S.values.row(i) -= (lambda1 - lambda2) * r12_fine.S.values.row(refinement * i);
        num += std::pow(l2_norm(defect), 2);
        den += std::pow(l2_norm(psi[s]), 2);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace skewrd
