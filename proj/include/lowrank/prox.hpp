#pragma once

#include <algorithm>
#include <cassert>

#include "lowrank/norms.hpp"
#include "lowrank/svd.hpp"

namespace lowrank {

struct ProxParams {
    double gamma = 1.0;
    Index r = 1;
};

enum class ProxKind { norm, squared };

namespace detail {

/// Residual of the optimality condition z - x in beta * dh(x) for
/// h = (1/2) * sum of the r largest squares, at a sorted nonnegative x.
/// Used by tests and by the debug check on every kernel call.
inline double top_r_sq_kkt_residual(const Vector& z, const Vector& x, Index r, double beta) {
    const Index d = z.size();
    if (!is_spectral(x)) return std::numeric_limits<double>::infinity();
    const double scale = std::max(1.0, z.size() > 0 ? z[0] : 1.0);
    const double v = x[r - 1];
    const double tie_tol = 1e-12 * std::max(1.0, v);
    Index p = r, q = r;  // 1-based tie block [p, q] = entries equal to v
    while (p > 1 && x[p - 2] <= v + tie_tol) --p;
    while (q < d && x[q] >= v - tie_tol) ++q;

    double res = 0.0;
    for (Index i = 0; i < p - 1; ++i) res = std::max(res, std::abs(z[i] - (1.0 + beta) * x[i]));
    for (Index i = q; i < d; ++i) res = std::max(res, std::abs(z[i] - x[i]));
    if (v > tie_tol) {
        double theta_sum = 0.0;
        for (Index i = p - 1; i < q; ++i) {
            const double theta = (z[i] - x[i]) / (beta * v);
            theta_sum += theta;
            res = std::max(res, beta * v * std::max(0.0, theta - 1.0));
            res = std::max(res, beta * v * std::max(0.0, -theta));
        }
        res = std::max(res, beta * v * std::abs(theta_sum - static_cast<double>(r - p + 1)) /
                                std::max<double>(1.0, static_cast<double>(q - p + 1)));
    } else {
        for (Index i = p - 1; i < q; ++i) res = std::max(res, std::abs(z[i] - x[i]) - beta * tie_tol);
    }
    return res / scale;
}

/// Clamp negatives and restore weak descending order after a subtraction
/// whose exact-arithmetic result is sorted; movements stay within a few ulps.
inline void repair_spectral(Vector& x) {
    for (Index i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0) x[i] = 0.0;
        if (i > 0 && x[i] > x[i - 1]) x[i] = x[i - 1];
    }
}

}  // namespace detail

/// Minimizer of (1/2)||x - z||^2 + (beta/2) * sum of the r largest squares
/// of x, for a spectral z. Entries above the crossing shrink by 1/(1+beta),
/// entries below stay, and a tie block around position r equalizes at the
/// weighted average v whenever the shrunk head would fall below the tail.
inline Vector vec_prox_top_r_sq(const Vector& z, Index r, double beta) {
    require_spectral(z, "vec_prox_top_r_sq");
    const Index d = z.size();
    require_rank(r, d, "vec_prox_top_r_sq");
    require_positive(beta, "vec_prox_top_r_sq", "beta");

    const double shrink = 1.0 + beta;
    Vector x(d);
    if (r == d || z[r - 1] / shrink >= z[r]) {
        x.head(r) = z.head(r) / shrink;
        if (r < d) x.tail(d - r) = z.tail(d - r);
    } else {
        // grow the tie block [p, q] (1-based) outward from the crossing until
        // its average value interlaces both neighbours
        Index p = r, q = r + 1;
        double block_sum = z[r - 1] + z[r];
        double v = 0.0;
        while (true) {
            v = block_sum / (static_cast<double>(q - p + 1) + beta * static_cast<double>(r - p + 1));
            if (p > 1 && z[p - 2] / shrink < v) {
                block_sum += z[p - 2];
                --p;
                continue;
            }
            if (q < d && z[q] > v) {
                block_sum += z[q];
                ++q;
                continue;
            }
            break;
        }
        x.head(p - 1) = z.head(p - 1) / shrink;
        x.segment(p - 1, q - p + 1).setConstant(v);
        if (q < d) x.tail(d - q) = z.tail(d - q);
    }
#ifndef NDEBUG
    assert(is_spectral(x));
    assert(detail::top_r_sq_kkt_residual(z, x, r, beta) <= 1e-9);
#endif
    return x;
}

/// Projection of a spectral z onto { x : truncated_fro_norm(x, r) <= radius }.
/// Bisects the multiplier mu of the squared-penalty prox; the constraint
/// value is continuous and nonincreasing in mu.
inline Vector vec_proj_top_r_ball(const Vector& z, Index r, double radius) {
    require_spectral(z, "vec_proj_top_r_ball");
    const Index d = z.size();
    require_rank(r, d, "vec_proj_top_r_ball");
    require_positive(radius, "vec_proj_top_r_ball", "radius");

    if (z.head(r).norm() <= radius) return z;  // mu = 0 feasible

    // (||z|| / radius)^2 always over-shrinks: the prox objective at x(mu)
    // is bounded by the value at 0, so the constraint value is <= ||z||/sqrt(mu)
    double lo = 0.0;
    double hi = std::pow(z.norm() / radius, 2);
    Vector x = vec_prox_top_r_sq(z, r, hi);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        Vector cand = vec_prox_top_r_sq(z, r, mid);
        const double c = cand.head(r).norm();
        if (std::abs(c - radius) <= 1e-10) return cand;
        if (c > radius) {
            lo = mid;
        } else {
            hi = mid;
            x.swap(cand);
        }
    }
    return x;  // feasible endpoint of the final bracket
}

/// Prox of gamma * ||.||_{ksup,r} via the Moreau decomposition: the
/// conjugate of a norm is the indicator of the dual-norm unit ball, so the
/// prox is z minus the projection onto the truncated-norm ball of radius gamma.
inline Vector vec_prox_rstar_norm(const Vector& z, Index r, double gamma) {
    require_spectral(z, "vec_prox_rstar_norm");
    require_rank(r, z.size(), "vec_prox_rstar_norm");
    require_positive(gamma, "vec_prox_rstar_norm", "gamma");
    Vector x = z - vec_proj_top_r_ball(z, r, gamma);
    detail::repair_spectral(x);
#ifndef NDEBUG
    assert(is_spectral(x));
#endif
    return x;
}

/// Prox of gamma * (1/2)||.||_{ksup,r}^2 via the exact Moreau identity
///   z = prox_{gamma f}(z) + gamma * prox_{f* / gamma}(z / gamma),
/// with f* = (1/2) * truncated norm squared.
inline Vector vec_prox_rstar_sq(const Vector& z, Index r, double gamma) {
    require_spectral(z, "vec_prox_rstar_sq");
    require_rank(r, z.size(), "vec_prox_rstar_sq");
    require_positive(gamma, "vec_prox_rstar_sq", "gamma");
    Vector x = z - gamma * vec_prox_top_r_sq(z / gamma, r, 1.0 / gamma);
    detail::repair_spectral(x);
#ifndef NDEBUG
    assert(is_spectral(x));
#endif
    return x;
}

/// Matrix prox of the low-rank inducing Frobenius norm (kind = norm) or of
/// half its square (kind = squared), both scaled by p.gamma: lift the
/// corresponding vector kernel through the SVD.
inline Matrix mat_prox(ProxKind kind, const Matrix& z, const ProxParams& p) {
    require_rank(p.r, std::min(z.rows(), z.cols()), "mat_prox");
    require_positive(p.gamma, "mat_prox", "gamma");
    const SvdFactors f = svd(z);
    const Vector s = kind == ProxKind::norm ? vec_prox_rstar_norm(f.s, p.r, p.gamma)
                                            : vec_prox_rstar_sq(f.s, p.r, p.gamma);
    return apply_spectral(f, s);
}

/// Best rank-r approximation in Frobenius norm (truncated SVD). Equal
/// singular values keep the backend's column order: the first r stay.
inline Matrix proj_rank(const Matrix& z, Index r) {
    require_rank(r, std::min(z.rows(), z.cols()), "proj_rank");
    const SvdFactors f = svd(z);
    Vector s = f.s;
    s.tail(s.size() - r).setZero();
    return apply_spectral(f, s);
}

}  // namespace lowrank
