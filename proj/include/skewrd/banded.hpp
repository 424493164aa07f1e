#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "skewrd/error.hpp"

namespace skewrd {

// LU factorization with partial pivoting of a band matrix with kl sub- and ku
// super-diagonals. Row i stores columns i-kl .. i+ku+kl; the extra kl columns
// absorb fill from row interchanges.
template <typename Scalar>
class BandedLU {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    BandedLU() = default;
    BandedLU(Eigen::Index n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1),
          band_(Band::Zero(n, 2 * kl + ku + 1)),
          pivots_(static_cast<std::size_t>(n)) {}

    Eigen::Index size() const { return n_; }

    Scalar& at(Eigen::Index i, Eigen::Index j) { return band_(i, j - i + kl_); }
    Scalar at(Eigen::Index i, Eigen::Index j) const { return band_(i, j - i + kl_); }

    void factorize() {
        for (Eigen::Index k = 0; k < n_; ++k) {
            const Eigen::Index last_row = std::min<Eigen::Index>(n_ - 1, k + kl_);
            const Eigen::Index last_col = std::min<Eigen::Index>(n_ - 1, k + ku_ + kl_);
            Eigen::Index p = k;
            double best = std::abs(at(k, k));
            for (Eigen::Index i = k + 1; i <= last_row; ++i) {
                if (std::abs(at(i, k)) > best) {
                    best = std::abs(at(i, k));
                    p = i;
                }
            }
            if (!(best > 0.0) || !std::isfinite(best)) {
                fail(ErrorCode::singular_system,
                     "zero pivot in banded factorization at row " + std::to_string(k));
            }
            pivots_[static_cast<std::size_t>(k)] = p;
            if (p != k) {
                for (Eigen::Index j = k; j <= last_col; ++j) std::swap(at(k, j), at(p, j));
            }
            const Scalar pivot = at(k, k);
            for (Eigen::Index i = k + 1; i <= last_row; ++i) {
                const Scalar l = at(i, k) / pivot;
                at(i, k) = l;
                if (l == Scalar(0)) continue;
                for (Eigen::Index j = k + 1; j <= last_col; ++j) at(i, j) -= l * at(k, j);
            }
        }
    }

    Vector solve(Vector b) const {
        for (Eigen::Index k = 0; k < n_; ++k) {
            const Eigen::Index p = pivots_[static_cast<std::size_t>(k)];
            if (p != k) std::swap(b(k), b(p));
            const Eigen::Index last_row = std::min<Eigen::Index>(n_ - 1, k + kl_);
            for (Eigen::Index i = k + 1; i <= last_row; ++i) b(i) -= at(i, k) * b(k);
        }
        for (Eigen::Index i = n_ - 1; i >= 0; --i) {
            const Eigen::Index last_col = std::min<Eigen::Index>(n_ - 1, i + ku_ + kl_);
            Scalar acc = b(i);
            for (Eigen::Index j = i + 1; j <= last_col; ++j) acc -= at(i, j) * b(j);
            b(i) = acc / at(i, i);
        }
        return b;
    }

private:
    Eigen::Index n_ = 0;
    int kl_ = 0, ku_ = 0, width_ = 0;
    using Band = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Band band_;
    std::vector<Eigen::Index> pivots_;
};

}  // namespace skewrd
