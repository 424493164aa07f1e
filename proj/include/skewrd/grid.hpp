#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace skewrd {

// Samples on a uniform tensor grid over [x0, x1] x [0, 1]; row i is x_i, column j is y_j.
template <typename Scalar>
struct GridFunction2D {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    double x0 = 0.0;
    double x1 = 1.0;
    Matrix values;

    GridFunction2D() = default;
    GridFunction2D(double a, double b, Eigen::Index nx, Eigen::Index ny)
        : x0(a), x1(b), values(Matrix::Zero(nx + 1, ny + 1)) {}

    Eigen::Index nx() const { return values.rows() - 1; }
    Eigen::Index ny() const { return values.cols() - 1; }
    double hx() const { return (x1 - x0) / static_cast<double>(nx()); }
    double hy() const { return 1.0 / static_cast<double>(ny()); }
    double x(Eigen::Index i) const { return x0 + (x1 - x0) * static_cast<double>(i) / nx(); }
    double y(Eigen::Index j) const { return static_cast<double>(j) / ny(); }

    template <typename Other>
    GridFunction2D<Other> cast() const {
        GridFunction2D<Other> out;
        out.x0 = x0;
        out.x1 = x1;
        out.values = values.template cast<Other>();
        return out;
    }
};

// A species density on both habitats; the interface x = 0 is stored twice
// (last row of I, first row of S).
template <typename Scalar>
struct SpeciesField {
    GridFunction2D<Scalar> I;
    GridFunction2D<Scalar> S;

    SpeciesField() = default;
    SpeciesField(double ell, double L, Eigen::Index nx_I, Eigen::Index nx_S, Eigen::Index ny)
        : I(-ell, 0.0, nx_I, ny), S(0.0, L, nx_S, ny) {}

    template <typename Other>
    SpeciesField<Other> cast() const {
        SpeciesField<Other> out;
        out.I = I.template cast<Other>();
        out.S = S.template cast<Other>();
        return out;
    }

    SpeciesField& operator+=(const SpeciesField& o) {
        I.values += o.I.values;
        S.values += o.S.values;
        return *this;
    }
    SpeciesField& operator*=(Scalar a) {
        I.values *= a;
        S.values *= a;
        return *this;
    }
};

template <typename Scalar>
SpeciesField<Scalar> operator-(SpeciesField<Scalar> a, const SpeciesField<Scalar>& b) {
    a.I.values -= b.I.values;
    a.S.values -= b.S.values;
    return a;
}

template <typename Scalar>
SpeciesField<Scalar> operator*(Scalar s, SpeciesField<Scalar> a) {
    a *= s;
    return a;
}

// Trapezoid weights in x and y so the interface row contributes half from each habitat.
template <typename Scalar>
double l2_norm(const GridFunction2D<Scalar>& f) {
    const Eigen::Index nx = f.nx(), ny = f.ny();
    double acc = 0.0;
    for (Eigen::Index i = 0; i <= nx; ++i) {
        const double wx = (i == 0 || i == nx) ? 0.5 : 1.0;
        for (Eigen::Index j = 0; j <= ny; ++j) {
            const double wy = (j == 0 || j == ny) ? 0.5 : 1.0;
            acc += wx * wy * std::norm(f.values(i, j));
        }
    }
    return std::sqrt(acc * f.hx() * f.hy());
}

template <typename Scalar>
double l2_norm(const SpeciesField<Scalar>& f) {
    const double a = l2_norm(f.I), b = l2_norm(f.S);
    return std::sqrt(a * a + b * b);
}

template <typename Scalar>
double max_abs(const SpeciesField<Scalar>& f) {
    return std::max(f.I.values.cwiseAbs().maxCoeff(), f.S.values.cwiseAbs().maxCoeff());
}

}  // namespace skewrd
