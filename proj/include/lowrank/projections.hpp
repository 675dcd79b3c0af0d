#pragma once

#include <unordered_set>
#include <vector>

#include "lowrank/core.hpp"

namespace lowrank {

/// A set of observed entries of a rows x cols matrix. Indices are 0-based,
/// unique and in range; values are finite. Built through make_sample_set so
/// the invariants hold for every instance in circulation.
struct SampleSet {
    struct Entry {
        Index i = 0;
        Index j = 0;
        double value = 0.0;
    };
    Index rows = 0;
    Index cols = 0;
    std::vector<Entry> entries;
};

inline SampleSet make_sample_set(Index rows, Index cols, std::vector<SampleSet::Entry> entries) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("make_sample_set: empty shape");
    std::unordered_set<long long> seen;
    seen.reserve(entries.size());
    for (const auto& e : entries) {
        if (e.i < 0 || e.i >= rows || e.j < 0 || e.j >= cols)
            throw std::invalid_argument("make_sample_set: index (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ") out of range");
        if (!std::isfinite(e.value))
            throw std::invalid_argument("make_sample_set: non-finite sample value");
        if (!seen.insert(static_cast<long long>(e.i) * cols + e.j).second)
            throw std::invalid_argument("make_sample_set: duplicate sample at (" + std::to_string(e.i) +
                                        "," + std::to_string(e.j) + ")");
    }
    return SampleSet{rows, cols, std::move(entries)};
}

/// Overwrite the sampled entries of z with the observed values; the
/// projection onto the affine set of matrices consistent with the samples.
inline Matrix proj_samples(const Matrix& z, const SampleSet& s) {
    if (z.rows() != s.rows || z.cols() != s.cols)
        throw std::invalid_argument("proj_samples: shape mismatch");
    Matrix x = z;
    for (const auto& e : s.entries) x(e.i, e.j) = e.value;
    return x;
}

/// Anti-diagonal means of z, i.e. the sequence defining proj_hankel(z).
inline Vector sequence_from_hankel(const Matrix& z) {
    const Index m = z.rows(), n = z.cols();
    Vector sum = Vector::Zero(m + n - 1);
    Vector count = Vector::Zero(m + n - 1);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i) {
            sum[i + j] += z(i, j);
            count[i + j] += 1.0;
        }
    return sum.cwiseQuotient(count);
}

inline Matrix hankel_from_sequence(Index m, Index n, const Vector& h) {
    if (m < 1 || n < 1) throw std::invalid_argument("hankel_from_sequence: empty shape");
    if (h.size() != m + n - 1)
        throw std::invalid_argument("hankel_from_sequence: sequence length " + std::to_string(h.size()) +
                                    " does not match " + std::to_string(m) + "+" + std::to_string(n) + "-1");
    Matrix x(m, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i) x(i, j) = h[i + j];
    return x;
}

/// Orthogonal projection onto the subspace of Hankel matrices: every
/// anti-diagonal is replaced by its arithmetic mean.
inline Matrix proj_hankel(const Matrix& z) {
    return hankel_from_sequence(z.rows(), z.cols(), sequence_from_hankel(z));
}

inline Matrix proj_nonneg(const Matrix& z) { return z.cwiseMax(0.0); }

inline Matrix proj_box(const Matrix& z, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("proj_box: lo > hi");
    return z.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace lowrank
