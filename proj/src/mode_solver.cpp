#include "skewrd/mode_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skewrd/error.hpp"

namespace skewrd {

void exp_moments(cplx p, double tau, cplx& phi0, cplx& phi1) {
    const cplx z = p * tau;
    cplx psi1, psi2;
    if (std::abs(z) < 1.0) {
        // psi1 = sum z^n/(n+1)!, psi2 = sum (n+1) z^n/(n+2)!
        cplx term(1.0, 0.0);  // z^n / (n+1)!
        psi1 = 0.0;
        psi2 = 0.0;
        for (int n = 0; n < 30; ++n) {
            psi1 += term;
            psi2 += term * (static_cast<double>(n + 1) / (n + 2));
            term *= z / static_cast<double>(n + 2);
        }
    } else {
        const cplx ez = std::exp(z);
        psi1 = (ez - 1.0) / z;
        psi2 = (ez * (z - 1.0) + 1.0) / (z * z);
    }
    phi0 = tau * psi1;
    phi1 = tau * tau * psi2;
}

ExpConvolution::ExpConvolution(cplx p, double x0, double x1, const Eigen::VectorXcd& g)
    : p_(p), x0_(x0), g_(g) {
    const Eigen::Index n = g.size() - 1;
    h_ = (x1 - x0) / static_cast<double>(n);
    fwd_ = Eigen::VectorXcd::Zero(n + 1);
    bwd_ = Eigen::VectorXcd::Zero(n + 1);
    cplx phi0, phi1;
    exp_moments(p, h_, phi0, phi1);
    const cplx decay = std::exp(p * h_);
    for (Eigen::Index i = 0; i < n; ++i) {
        fwd_(i + 1) = decay * fwd_(i) + g(i + 1) * phi0 + (g(i) - g(i + 1)) * phi1 / h_;
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        bwd_(i) = decay * bwd_(i + 1) + g(i) * phi0 + (g(i + 1) - g(i)) * phi1 / h_;
    }
}

Eigen::Index ExpConvolution::cell(double x) const {
    const Eigen::Index n = g_.size() - 1;
    const auto i = static_cast<Eigen::Index>(std::floor((x - x0_) / h_));
    return std::clamp<Eigen::Index>(i, 0, n - 1);
}

cplx ExpConvolution::density(double x) const {
    const Eigen::Index i = cell(x);
    const double s = (x - (x0_ + i * h_)) / h_;
    return (1.0 - s) * g_(i) + s * g_(i + 1);
}

cplx ExpConvolution::forward(double x) const {
    const Eigen::Index i = cell(x);
    const double tau = x - (x0_ + i * h_);
    const cplx slope = (g_(i + 1) - g_(i)) / h_;
    cplx phi0, phi1;
    exp_moments(p_, tau, phi0, phi1);
    return std::exp(p_ * tau) * fwd_(i) + density(x) * phi0 - slope * phi1;
}

cplx ExpConvolution::backward(double x) const {
    const Eigen::Index i = cell(x);
    const double tau = (x0_ + (i + 1) * h_) - x;
    const cplx slope = (g_(i + 1) - g_(i)) / h_;
    cplx phi0, phi1;
    exp_moments(p_, tau, phi0, phi1);
    return std::exp(p_ * tau) * bwd_(i + 1) + density(x) * phi0 + slope * phi1;
}

ModeProblem make_mode_problem(int k, cplx lambda, const SpeciesCoefficients& c,
                              const Eigen::VectorXcd& rhs_I, const Eigen::VectorXcd& rhs_S,
                              double ell, double L) {
    const SpectralShift shift = make_shift(lambda, c);
    const auto [pm, pp] = mode_exponents(k, shift);
    ModeProblem m;
    m.k = k;
    m.p_minus = pm;
    m.p_plus = pp;
    m.g_I = rhs_I / c.d_minus;
    m.g_S = rhs_S / c.d_plus;
    m.beta_I = c.weight_I;
    m.beta_S = c.weight_S;
    m.ell = ell;
    m.L = L;
    return m;
}

cplx ModeSolution::w_I(double x) const {
    return (conv_I_.forward(x) + conv_I_.backward(x)) / (2.0 * pm_);
}

cplx ModeSolution::w_S(double x) const {
    return (conv_S_.forward(x) + conv_S_.backward(x)) / (2.0 * pp_);
}

cplx ModeSolution::h_I(double x) const {
    return delta_I * (std::exp(-x * pm_) - std::exp((x + 2.0 * ell_) * pm_)) -
           std::exp((x + ell_) * pm_) * w_I_left_ + w_I(x);
}

cplx ModeSolution::h_S(double x) const {
    return gamma_S * (std::exp(x * pp_) - std::exp((2.0 * L_ - x) * pp_)) -
           std::exp((L_ - x) * pp_) * w_S_right_ + w_S(x);
}

cplx ModeSolution::dh_I(double x) const {
    const cplx dw = (conv_I_.forward(x) - conv_I_.backward(x)) / 2.0;
    return -pm_ * delta_I * (std::exp(-x * pm_) + std::exp((x + 2.0 * ell_) * pm_)) -
           pm_ * std::exp((x + ell_) * pm_) * w_I_left_ + dw;
}

cplx ModeSolution::dh_S(double x) const {
    const cplx dw = (conv_S_.forward(x) - conv_S_.backward(x)) / 2.0;
    return pp_ * gamma_S * (std::exp(x * pp_) + std::exp((2.0 * L_ - x) * pp_)) +
           pp_ * std::exp((L_ - x) * pp_) * w_S_right_ + dw;
}

Eigen::VectorXcd ModeSolution::sample_I(Eigen::Index n) const {
    Eigen::VectorXcd out(n + 1);
    const bool on_nodes = n == conv_I_.forward_nodes().size() - 1;
    for (Eigen::Index i = 1; i <= n; ++i) {
        const double x = -ell_ + ell_ * static_cast<double>(i) / n;
        if (!on_nodes) {
            out(i) = h_I(x);
            continue;
        }
        const cplx w = (conv_I_.forward_nodes()(i) + conv_I_.backward_nodes()(i)) / (2.0 * pm_);
        out(i) = delta_I * (std::exp(-x * pm_) - std::exp((x + 2.0 * ell_) * pm_)) -
                 std::exp((x + ell_) * pm_) * w_I_left_ + w;
    }
    out(0) = 0.0;
    return out;
}

Eigen::VectorXcd ModeSolution::sample_S(Eigen::Index n) const {
    Eigen::VectorXcd out(n + 1);
    const bool on_nodes = n == conv_S_.forward_nodes().size() - 1;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = L_ * static_cast<double>(i) / n;
        if (!on_nodes) {
            out(i) = h_S(x);
            continue;
        }
        const cplx w = (conv_S_.forward_nodes()(i) + conv_S_.backward_nodes()(i)) / (2.0 * pp_);
        out(i) = gamma_S * (std::exp(x * pp_) - std::exp((2.0 * L_ - x) * pp_)) -
                 std::exp((L_ - x) * pp_) * w_S_right_ + w;
    }
    out(n) = 0.0;
    return out;
}

ModeSolution solve_mode(const ModeProblem& m) {
    if (m.g_I.size() < 3 || m.g_S.size() < 3) {
        fail(ErrorCode::quadrature_resolution, "mode " + std::to_string(m.k) +
                                                   " needs at least two quadrature cells per side");
    }
    if (!(m.p_minus.real() < 0.0 && m.p_plus.real() < 0.0)) {
        fail(ErrorCode::invalid_argument, "mode exponents must have negative real part");
    }
    const cplx pm = m.p_minus, pp = m.p_plus;
    ModeSolution s;
    s.pm_ = pm;
    s.pp_ = pp;
    s.ell_ = m.ell;
    s.L_ = m.L;
    s.conv_I_ = ExpConvolution(pm, -m.ell, 0.0, m.g_I);
    s.conv_S_ = ExpConvolution(pp, 0.0, m.L, m.g_S);

    const Eigen::Index nI = m.g_I.size() - 1, nS = m.g_S.size() - 1;
    const cplx w_I_left = s.conv_I_.backward_nodes()(0) / (2.0 * pm);
    const cplx w_I_zero = s.conv_I_.forward_nodes()(nI) / (2.0 * pm);
    const cplx w_S_zero = s.conv_S_.backward_nodes()(0) / (2.0 * pp);
    const cplx w_S_right = s.conv_S_.forward_nodes()(nS) / (2.0 * pp);

    const cplx half_I = std::exp(m.ell * pm), half_S = std::exp(m.L * pp);
    const cplx full_I = half_I * half_I, full_S = half_S * half_S;
    const cplx one_minus_I = one_minus_exp_neg(-2.0 * m.ell * pm);
    const cplx one_minus_S = one_minus_exp_neg(-2.0 * m.L * pp);

    const cplx R_I = w_I_zero - half_I * w_I_left;
    const cplx R_S = w_S_zero - half_S * w_S_right;
    const cplx ratio = pp / pm;

    const cplx det = m.beta_I * (1.0 + full_I) * one_minus_S +
                     m.beta_S * ratio * one_minus_I * (1.0 + full_S);
    if (!(std::abs(det) >= 1e-300)) {
        fail(ErrorCode::determinant_underflow,
             "mode " + std::to_string(m.k) + " determinant modulus below 1e-300");
    }
    const cplx rhs2 = m.beta_I * R_I + m.beta_S * ratio * R_S;
    s.delta_I = (m.beta_S * ratio * (1.0 + full_S) * (R_S - R_I) + one_minus_S * rhs2) / det;
    s.gamma_S = (-m.beta_I * (1.0 + full_I) * (R_S - R_I) + one_minus_I * rhs2) / det;
    s.gamma_I = -half_I * s.delta_I - w_I_left;
    s.delta_S = -half_S * s.gamma_S - w_S_right;
    s.determinant = det;
    s.w_I_left_ = w_I_left;
    s.w_S_right_ = w_S_right;
    return s;
}

}  // namespace skewrd
