#pragma once

#include <Eigen/Dense>

#include "skewrd/grid.hpp"

namespace skewrd {

// S(j - 1, k - 1) = sin(k pi j / ny) for interior nodes j = 1..ny-1 and modes k = 1..K.
Eigen::MatrixXd sine_matrix(Eigen::Index ny, int K);

// Throws nyquist_exceeded unless 1 <= K <= ny - 1.
void check_mode_count(Eigen::Index ny, int K);

// Row i holds c_k(x_i) = 2 * integral of f(x_i, y) sin(k pi y) dy, by the trapezoid
// rule on the uniform y-grid (exact for sine modes below Nyquist).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sine_transform(
    const GridFunction2D<Scalar>& f, int K) {
    check_mode_count(f.ny(), K);
    const Eigen::MatrixXd S = sine_matrix(f.ny(), K);
    const double scale = 2.0 / static_cast<double>(f.ny());
    return scale * (f.values.middleCols(1, f.ny() - 1) * S.template cast<Scalar>());
}

template <typename Scalar>
GridFunction2D<Scalar> inverse_sine_transform(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& coeffs, double x0, double x1,
    Eigen::Index ny) {
    const int K = static_cast<int>(coeffs.cols());
    check_mode_count(ny, K);
    GridFunction2D<Scalar> f(x0, x1, coeffs.rows() - 1, ny);
    const Eigen::MatrixXd S = sine_matrix(ny, K);
    f.values.middleCols(1, ny - 1) = coeffs * S.transpose().template cast<Scalar>();
    return f;
}

}  // namespace skewrd
