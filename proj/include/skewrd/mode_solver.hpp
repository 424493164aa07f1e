#pragma once

#include <Eigen/Dense>
#include <complex>

#include "skewrd/model.hpp"
#include "skewrd/sector.hpp"

namespace skewrd {

// One sine mode of a species block: h'' - p^2 h = g on (-ell, 0) and (0, L), with
// h(-ell) = h(L) = 0, continuity at 0 and beta_I h_I'(0) = beta_S h_S'(0).
// g_I and g_S are samples on uniform grids covering each interval, endpoints included.
struct ModeProblem {
    int k = 1;
    cplx p_minus{-1.0, 0.0};
    cplx p_plus{-1.0, 0.0};
    Eigen::VectorXcd g_I;
    Eigen::VectorXcd g_S;
    double beta_I = 1.0;
    double beta_S = 1.0;
    double ell = 1.0;
    double L = 1.0;
};

// Builds the mode-k problem for one species block; rhs samples are divided by the
// habitat's diffusion coefficient.
ModeProblem make_mode_problem(int k, cplx lambda, const SpeciesCoefficients& coeffs,
                              const Eigen::VectorXcd& rhs_I, const Eigen::VectorXcd& rhs_S,
                              double ell, double L);

// Exponential-kernel convolutions of a piecewise-linear density on a uniform grid:
// forward(x) = int_{x0}^{x} e^{(x-t)p} g(t) dt, backward(x) = int_{x}^{x1} e^{(t-x)p} g(t) dt.
class ExpConvolution {
public:
    ExpConvolution() = default;
    ExpConvolution(cplx p, double x0, double x1, const Eigen::VectorXcd& g);

    cplx forward(double x) const;
    cplx backward(double x) const;
    cplx density(double x) const;
    const Eigen::VectorXcd& forward_nodes() const { return fwd_; }
    const Eigen::VectorXcd& backward_nodes() const { return bwd_; }

private:
    Eigen::Index cell(double x) const;

    cplx p_{-1.0, 0.0};
    double x0_ = 0.0, h_ = 1.0;
    Eigen::VectorXcd g_, fwd_, bwd_;
};

class ModeSolution {
public:
    cplx gamma_I{}, delta_I{}, gamma_S{}, delta_S{};
    cplx determinant{};

    cplx h_I(double x) const;
    cplx h_S(double x) const;
    cplx dh_I(double x) const;
    cplx dh_S(double x) const;

    // Particular parts w_I, w_S of the representation.
    cplx w_I(double x) const;
    cplx w_S(double x) const;

    // Values at n + 1 equispaced points of each interval.
    Eigen::VectorXcd sample_I(Eigen::Index n) const;
    Eigen::VectorXcd sample_S(Eigen::Index n) const;

private:
    friend ModeSolution solve_mode(const ModeProblem& problem);

    cplx pm_{}, pp_{};
    double ell_ = 1.0, L_ = 1.0;
    cplx w_I_left_{}, w_S_right_{};
    ExpConvolution conv_I_, conv_S_;
};

// Throws determinant_underflow, quadrature_resolution (fewer than two cells per side)
// or invalid_argument (Re p >= 0).
ModeSolution solve_mode(const ModeProblem& problem);

// phi0 = int_0^tau e^{p s} ds and phi1 = int_0^tau s e^{p s} ds, series-evaluated near p tau = 0.
void exp_moments(cplx p, double tau, cplx& phi0, cplx& phi1);

}  // namespace skewrd
