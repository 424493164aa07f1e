#include "skewrd/sine_transform.hpp"

#include <cmath>
#include <string>

#include "skewrd/error.hpp"
#include "skewrd/model.hpp"

namespace skewrd {

void check_mode_count(Eigen::Index ny, int K) {
    if (K < 1 || K > ny - 1) {
        fail(ErrorCode::nyquist_exceeded, "mode count " + std::to_string(K) +
                                              " outside 1.." + std::to_string(ny - 1) +
                                              " for a y-grid of " + std::to_string(ny) +
                                              " intervals");
    }
}

Eigen::MatrixXd sine_matrix(Eigen::Index ny, int K) {
    Eigen::MatrixXd S(ny - 1, K);
    for (Eigen::Index j = 1; j < ny; ++j) {
        for (int k = 1; k <= K; ++k) {
            // Reduce k*j modulo 2*ny before scaling so large products keep full accuracy.
            const long m = (static_cast<long>(k) * j) % (2 * ny);
            S(j - 1, k - 1) = std::sin(pi * static_cast<double>(m) / static_cast<double>(ny));
        }
    }
    return S;
}

}  // namespace skewrd
