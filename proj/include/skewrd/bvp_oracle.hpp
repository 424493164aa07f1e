#pragma once

#include <Eigen/Dense>
#include <utility>

#include "skewrd/banded.hpp"

namespace skewrd {

// Second-order finite differences for h'' - omega^2 h = g on (-ell, 0) and (0, L) with
// h(-ell) = h(L) = 0. The interface carries two unknowns (left and right trace) tied by
// continuity and beta_I D^- h_I = beta_S D^+ h_S, D^-+ the 3-point one-sided differences.
// Unknown order: I_1..I_{nI-1}, trace_I, trace_S, S_1..S_{nS-1}.
template <typename Scalar>
class TwoIntervalSolver {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    TwoIntervalSolver() = default;
    TwoIntervalSolver(Scalar omega_minus_sq, Scalar omega_plus_sq, double beta_I, double beta_S,
                      double ell, double L, Eigen::Index nI, Eigen::Index nS)
        : nI_(nI), nS_(nS), hI_(ell / nI), hS_(L / nS), lu_(nI + nS, 3, 3) {
        if (nI < 3 || nS < 3) {
            fail(ErrorCode::invalid_argument, "two-interval grids need at least 3 cells per side");
        }
        const double iI = 1.0 / (hI_ * hI_), iS = 1.0 / (hS_ * hS_);
        for (Eigen::Index i = 1; i < nI; ++i) {
            const Eigen::Index r = i - 1;
            if (i > 1) lu_.at(r, r - 1) = iI;
            lu_.at(r, r) = -2.0 * iI - omega_minus_sq;
            lu_.at(r, r + 1) = iI;
        }
        const Eigen::Index tI = nI - 1, tS = nI;
        lu_.at(tI, tI - 2) = beta_I / (2.0 * hI_);
        lu_.at(tI, tI - 1) = -4.0 * beta_I / (2.0 * hI_);
        lu_.at(tI, tI) = 3.0 * beta_I / (2.0 * hI_);
        lu_.at(tI, tS) = 3.0 * beta_S / (2.0 * hS_);
        lu_.at(tI, tS + 1) = -4.0 * beta_S / (2.0 * hS_);
        lu_.at(tI, tS + 2) = beta_S / (2.0 * hS_);
        lu_.at(tS, tI) = 1.0;
        lu_.at(tS, tS) = -1.0;
        for (Eigen::Index i = 1; i < nS; ++i) {
            const Eigen::Index r = nI + i;
            lu_.at(r, r - 1) = iS;
            lu_.at(r, r) = -2.0 * iS - omega_plus_sq;
            if (i < nS - 1) lu_.at(r, r + 1) = iS;
        }
        lu_.factorize();
    }

    Eigen::Index cells_I() const { return nI_; }
    Eigen::Index cells_S() const { return nS_; }

    // g_I, g_S: node samples including endpoints. Returns node values including the
    // zero Dirichlet ends.
    std::pair<Vector, Vector> solve(const Vector& g_I, const Vector& g_S) const {
        Vector b = Vector::Zero(nI_ + nS_);
        b.segment(0, nI_ - 1) = g_I.segment(1, nI_ - 1);
        b.segment(nI_ + 1, nS_ - 1) = g_S.segment(1, nS_ - 1);
        return unpack(lu_.solve(b));
    }

    // Right-hand side given directly in unknown order (interface rows included).
    std::pair<Vector, Vector> solve_raw(const Vector& b) const { return unpack(lu_.solve(b)); }

private:
    std::pair<Vector, Vector> unpack(const Vector& x) const {
        Vector hI = Vector::Zero(nI_ + 1), hS = Vector::Zero(nS_ + 1);
        hI.segment(1, nI_ - 1) = x.segment(0, nI_ - 1);
        hI(nI_) = x(nI_ - 1);
        hS(0) = x(nI_);
        hS.segment(1, nS_ - 1) = x.segment(nI_ + 1, nS_ - 1);
        return {hI, hS};
    }

    Eigen::Index nI_ = 0, nS_ = 0;
    double hI_ = 0.0, hS_ = 0.0;
    BandedLU<Scalar> lu_;
};

template <typename Scalar>
struct TwoIntervalBVP {
    Scalar omega_minus_sq{};
    Scalar omega_plus_sq{};
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> g_I;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> g_S;
    double beta_I = 1.0;
    double beta_S = 1.0;
    double ell = 1.0;
    double L = 1.0;

    Eigen::Index n_oracle() const { return std::min(g_I.size(), g_S.size()) - 1; }
};

inline constexpr Eigen::Index min_oracle_cells = 512;

// Oracle entry point; rejects grids coarser than min_oracle_cells per side.
template <typename Scalar>
std::pair<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>
solve_fd(const TwoIntervalBVP<Scalar>& bvp) {
    if (bvp.n_oracle() < min_oracle_cells) {
        fail(ErrorCode::invalid_argument, "oracle grid must have at least 512 cells per side");
    }
    const TwoIntervalSolver<Scalar> solver(bvp.omega_minus_sq, bvp.omega_plus_sq, bvp.beta_I,
                                           bvp.beta_S, bvp.ell, bvp.L, bvp.g_I.size() - 1,
                                           bvp.g_S.size() - 1);
    return solver.solve(bvp.g_I, bvp.g_S);
}

// One-sided second-order derivative at the right end of v (spacing h).
template <typename Vec>
auto left_trace_derivative(const Vec& v, double h) {
    const Eigen::Index n = v.size() - 1;
    return (3.0 * v(n) - 4.0 * v(n - 1) + v(n - 2)) / (2.0 * h);
}

// One-sided second-order derivative at the left end of v (spacing h).
template <typename Vec>
auto right_trace_derivative(const Vec& v, double h) {
    return (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * h);
}

}  // namespace skewrd
