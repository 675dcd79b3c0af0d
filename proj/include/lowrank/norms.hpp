#pragma once

#include <limits>

#include "lowrank/svd.hpp"

namespace lowrank {

inline double frobenius_norm(const Matrix& x) {
    require_finite(x, "frobenius_norm");
    return x.norm();
}

/// Euclidean norm of the r largest entries of a spectral vector.
inline double truncated_fro_norm(const Vector& z, Index r) {
    require_spectral(z, "truncated_fro_norm");
    require_rank(r, z.size(), "truncated_fro_norm");
    return z.head(r).norm();
}

/// Euclidean norm of the r largest singular values of x.
inline double truncated_fro_norm(const Matrix& x, Index r) {
    require_rank(r, std::min(x.rows(), x.cols()), "truncated_fro_norm");
    return truncated_fro_norm(svd(x).s, r);
}

/// k-support norm of a spectral vector with parameter r: the dual norm of
/// the truncated norm above. Evaluated through the standard split
///
///   ||z||^2 = sum_{i<r-t} z_i^2 + (sum_{i>=r-t} z_i)^2 / (t+1)
///
/// (1-based indices) where t in {0,...,r-1} is located by scanning for the
/// window whose tail average interlaces z. Ties accept the first t whose
/// weak inequalities hold; the value is continuous across ties.
inline double ksup_norm(const Vector& z, Index r) {
    require_spectral(z, "ksup_norm");
    const Index d = z.size();
    require_rank(r, d, "ksup_norm");

    // slack guards against 1-ulp misses at exact ties; the value is
    // tie-continuous so accepting within slack cannot move it materially
    const double slack = 1e-12 * std::max(1.0, z[0]);

    double tail = z.tail(d - r + 1).sum();  // sum z_i for i >= r (1-based)
    for (Index t = 0; t < r; ++t) {
        const double avg = tail / static_cast<double>(t + 1);
        const double left = (t == r - 1) ? std::numeric_limits<double>::infinity()
                                         : z[r - t - 2];
        if (left >= avg - slack && avg >= z[r - t - 1] - slack) {
            const double head_sq = z.head(r - t - 1).squaredNorm();
            return std::sqrt(head_sq + tail * tail / static_cast<double>(t + 1));
        }
        if (t + 1 < r) tail += z[r - t - 2];
    }
    throw std::logic_error("ksup_norm: window search failed");  // unreachable
}

/// Low-rank inducing Frobenius norm: k-support norm of the singular values.
/// Coincides with the Frobenius norm exactly on matrices of rank <= r.
inline double low_rank_inducing_fro_norm(const Matrix& x, Index r) {
    require_rank(r, std::min(x.rows(), x.cols()), "low_rank_inducing_fro_norm");
    return ksup_norm(svd(x).s, r);
}

}  // namespace lowrank
