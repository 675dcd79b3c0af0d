#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace lowrank {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// A "spectral vector" is a Vector that is finite, nonnegative and sorted in
// descending order. All scalar prox/norm kernels operate on this shape; the
// matrix-level operations obtain it from the SVD.

inline bool is_spectral(const Vector& z) {
    if (!z.allFinite()) return false;
    for (Index i = 0; i < z.size(); ++i) {
        if (z[i] < 0.0) return false;
        if (i + 1 < z.size() && z[i] < z[i + 1]) return false;
    }
    return true;
}

inline void require_finite(const Matrix& a, const std::string& where) {
    if (!a.allFinite()) throw std::invalid_argument(where + ": non-finite entries");
}

inline void require_spectral(const Vector& z, const std::string& where) {
    if (!is_spectral(z))
        throw std::invalid_argument(where + ": expected a nonnegative vector sorted in descending order");
}

// Rank parameters are 1-based and must satisfy 1 <= r <= bound, where bound is
// the vector length or min(rows, cols) of the matrix at hand.
inline void require_rank(Index r, Index bound, const std::string& where) {
    if (r < 1 || r > bound)
        throw std::invalid_argument(where + ": rank parameter " + std::to_string(r) +
                                    " out of range [1, " + std::to_string(bound) + "]");
}

inline void require_positive(double x, const std::string& where, const std::string& name) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument(where + ": " + name + " must be positive and finite");
}

}  // namespace lowrank
