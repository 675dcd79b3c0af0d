#pragma once

#include <Eigen/SVD>

#include "lowrank/core.hpp"

namespace lowrank {

/// Thin SVD factors of a matrix: a = u * diag(s) * v^T with orthonormal
/// columns in u, v and s sorted descending. Only the thin part
/// (p = min(rows, cols)) is ever materialized.
struct SvdFactors {
    Matrix u;  // rows x p
    Vector s;  // length p, descending, nonnegative
    Matrix v;  // cols x p
};

inline SvdFactors svd(const Matrix& a) {
    require_finite(a, "svd");
    Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
        throw std::runtime_error("svd: backend failed to converge");
    return SvdFactors{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

inline Matrix reconstruct(const SvdFactors& f) {
    if (f.u.cols() != f.s.size() || f.v.cols() != f.s.size())
        throw std::invalid_argument("reconstruct: factor shapes disagree");
    return f.u * f.s.asDiagonal() * f.v.transpose();
}

/// Rebuild a matrix from the factors with the spectrum replaced by new_s.
/// This is the lifting step behind every matrix prox: a kernel transforms
/// the singular values, apply_spectral maps the result back.
inline Matrix apply_spectral(const SvdFactors& f, const Vector& new_s) {
    if (new_s.size() != f.s.size())
        throw std::invalid_argument("apply_spectral: spectrum length mismatch");
    require_spectral(new_s, "apply_spectral");
    if (f.u.cols() != f.s.size() || f.v.cols() != f.s.size())
        throw std::invalid_argument("apply_spectral: factor shapes disagree");
    return f.u * new_s.asDiagonal() * f.v.transpose();
}

}  // namespace lowrank
