#include "skewrd/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "skewrd/bvp_oracle.hpp"
#include "skewrd/error.hpp"
#include "skewrd/mode_solver.hpp"
#include "skewrd/sampling.hpp"
#include "skewrd/sine_transform.hpp"

namespace skewrd {

ComplexField resolve_species(cplx lambda, const SpeciesCoefficients& coeffs,
                             const ComplexField& rhs, const SectorConfig& sector, int K,
                             Eigen::Index output_refinement) {
    if (!in_sector(lambda, resolvent_angle(sector))) {
        fail(ErrorCode::sector_violation,
             "lambda = (" + std::to_string(lambda.real()) + ", " + std::to_string(lambda.imag()) +
                 ") outside the resolvent sector of half-angle " +
                 std::to_string(resolvent_angle(sector)));
    }
    if (coeffs.species == Species::host && !coefficients_satisfy_hypothesis(coeffs, sector.r0)) {
        fail(ErrorCode::hypothesis_violation,
             "host growth bound " +
                 std::to_string(std::max(-coeffs.c_minus / coeffs.d_minus,
                                         -coeffs.c_plus / coeffs.d_plus)) +
                 " exceeds r0 = " + std::to_string(sector.r0));
    }
    if (output_refinement < 1) fail(ErrorCode::invalid_argument, "output refinement must be >= 1");

    const double ell = -rhs.I.x0, L = rhs.S.x1;
    const Eigen::Index ny = rhs.I.ny();
    const Eigen::MatrixXcd cI = sine_transform(rhs.I, K);
    const Eigen::MatrixXcd cS = sine_transform(rhs.S, K);
    const Eigen::Index outI = rhs.I.nx() * output_refinement;
    const Eigen::Index outS = rhs.S.nx() * output_refinement;

    Eigen::MatrixXcd hI(outI + 1, K), hS(outS + 1, K);
    for (int k = 1; k <= K; ++k) {
        const ModeProblem problem =
            make_mode_problem(k, lambda, coeffs, cI.col(k - 1), cS.col(k - 1), ell, L);
        const ModeSolution sol = solve_mode(problem);
        hI.col(k - 1) = sol.sample_I(outI);
        hS.col(k - 1) = sol.sample_S(outS);
    }
    ComplexField out;
    out.I = inverse_sine_transform<cplx>(hI, -ell, 0.0, ny);
    out.S = inverse_sine_transform<cplx>(hS, 0.0, L, ny);
    return out;
}

SpeciesTriple resolve_full(cplx lambda, const ModelParameters& params, const SpeciesTriple& psi,
                           const SectorConfig& sector, int K, Eigen::Index output_refinement) {
    validate(params);
    SpeciesTriple out;
    for (int s = 0; s < 3; ++s) {
        const SpeciesCoefficients c = species_coefficients(params, static_cast<Species>(s));
        out[s] = resolve_species(lambda, c, psi[s], sector, K, output_refinement);
    }
    return out;
}

double energy_norm(const SpeciesTriple& fields) {
    double m = 0.0;
    for (const auto& f : fields) m = std::max(m, l2_norm(f));
    return m;
}

TransmissionDefect transmission_defect(const ComplexField& phi, double weight_I, double weight_S) {
    TransmissionDefect d;
    const Eigen::Index nI = phi.I.nx();
    const double hI = phi.I.hx(), hS = phi.S.hx();
    for (Eigen::Index j = 0; j <= phi.I.ny(); ++j) {
        const Eigen::VectorXcd left = phi.I.values.col(j);
        const Eigen::VectorXcd right = phi.S.values.col(j);
        d.continuity = std::max(d.continuity, std::abs(left(nI) - right(0)));
        const cplx flux = weight_I * left_trace_derivative(left, hI) -
                          weight_S * right_trace_derivative(right, hS);
        d.flux = std::max(d.flux, std::abs(flux));
    }
    return d;
}

namespace {

void accumulate_residual(const GridFunction2D<cplx>& phi, const GridFunction2D<cplx>& rhs,
                         cplx lambda, double c, double d, double& num, double& den) {
    const double hx = phi.hx(), hy = phi.hy();
    const cplx shift = (lambda + c) / d;
    for (Eigen::Index i = 1; i < phi.nx(); ++i) {
        for (Eigen::Index j = 1; j < phi.ny(); ++j) {
            const auto& v = phi.values;
            const cplx lap = (v(i + 1, j) - 2.0 * v(i, j) + v(i - 1, j)) / (hx * hx) +
                             (v(i, j + 1) - 2.0 * v(i, j) + v(i, j - 1)) / (hy * hy);
            const cplx g = rhs.values(i, j) / d;
            num += std::norm(lap - shift * v(i, j) - g) * hx * hy;
            den += std::norm(g) * hx * hy;
        }
    }
}

}  // namespace

double fd_residual(const ComplexField& phi, const ComplexField& rhs, cplx lambda,
                   const SpeciesCoefficients& coeffs) {
    double num = 0.0, den = 0.0;
    accumulate_residual(phi.I, rhs.I, lambda, coeffs.c_minus, coeffs.d_minus, num, den);
    accumulate_residual(phi.S, rhs.S, lambda, coeffs.c_plus, coeffs.d_plus, num, den);
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

namespace {

double species_norm_estimate(cplx lambda, const SpeciesCoefficients& coeffs,
                             const SectorConfig& sector, const ModelParameters& params,
                             const ResolventGrid& grid, const NormEstimateOptions& opts,
                             std::uint64_t seed) {
    double best = 0.0;
    ComplexField best_probe;
    for (int q = 0; q < opts.probes; ++q) {
        const ComplexField probe =
            noise_field(seed + static_cast<std::uint64_t>(q), params.ell, params.L, grid.nx_I,
                        grid.nx_S, grid.ny);
        const double n_in = l2_norm(probe);
        if (n_in == 0.0) continue;
        const double ratio = l2_norm(resolve_species(lambda, coeffs, probe, sector, opts.modes)) / n_in;
        if (ratio > best) {
            best = ratio;
            best_probe = probe;
        }
    }
    if (best == 0.0) return 0.0;
    ComplexField v = best_probe;
    v *= cplx(1.0 / l2_norm(v));
    for (int it = 0; it < opts.power_steps; ++it) {
        ComplexField w = resolve_species(lambda, coeffs, v, sector, opts.modes);
        const double nw = l2_norm(w);
        if (nw == 0.0) break;
        best = std::max(best, nw);
        w *= cplx(1.0 / nw);
        v = std::move(w);
    }
    return best;
}

}  // namespace

std::vector<NormSample> estimate_resolvent_norm(const std::vector<cplx>& lambdas,
                                                const ModelParameters& params,
                                                const SectorConfig& sector,
                                                const ResolventGrid& grid,
                                                const NormEstimateOptions& opts) {
    validate(params);
    std::vector<NormSample> out;
    out.reserve(lambdas.size());
    for (const cplx lambda : lambdas) {
        NormSample s;
        s.lambda = lambda;
        for (int sp = 0; sp < 3; ++sp) {
            const SpeciesCoefficients c = species_coefficients(params, static_cast<Species>(sp));
            const std::uint64_t seed = opts.seed + 1000003ULL * static_cast<std::uint64_t>(sp);
            s.norm_estimate = std::max(
                s.norm_estimate, species_norm_estimate(lambda, c, sector, params, grid, opts, seed));
        }
        s.product = (1.0 + std::abs(lambda)) * s.norm_estimate;
        out.push_back(s);
    }
    return out;
}

ComplexField smooth_random_field(std::uint64_t seed, double ell, double L, Eigen::Index nx_I,
                                 Eigen::Index nx_S, Eigen::Index ny, int y_modes) {
    Rng rng(seed);
    ComplexField f(ell, L, nx_I, nx_S, ny);
    for (int k = 1; k <= y_modes; ++k) {
        double a[2], b[2];
        for (double& v : a) v = uniform(rng, -1.0, 1.0);
        for (double& v : b) v = uniform(rng, -1.0, 1.0);
        for (Eigen::Index j = 1; j < ny; ++j) {
            const double sy = std::sin(k * pi * f.I.y(j));
            for (Eigen::Index i = 0; i <= nx_I; ++i) {
                const double s = (f.I.x(i) + ell) / (2.0 * ell);
                f.I.values(i, j) += sy * (a[0] * std::sin(pi * s) + a[1] * std::sin(2.0 * pi * s));
            }
            for (Eigen::Index i = 0; i <= nx_S; ++i) {
                const double s = (L - f.S.x(i)) / (2.0 * L);
                f.S.values(i, j) += sy * (b[0] * std::sin(pi * s) + b[1] * std::sin(2.0 * pi * s));
            }
        }
    }
    f.I.values.row(0).setZero();
    f.S.values.row(nx_S).setZero();
    return f;
}

ComplexField noise_field(std::uint64_t seed, double ell, double L, Eigen::Index nx_I,
                         Eigen::Index nx_S, Eigen::Index ny) {
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexField f(ell, L, nx_I, nx_S, ny);
    for (Eigen::Index i = 1; i <= nx_I; ++i)
        for (Eigen::Index j = 1; j < ny; ++j) f.I.values(i, j) = normal(rng);
    for (Eigen::Index i = 0; i < nx_S; ++i)
        for (Eigen::Index j = 1; j < ny; ++j) f.S.values(i, j) = normal(rng);
    return f;
}

}  // namespace skewrd
