#pragma once

#include <ostream>

#include "lowrank/norms.hpp"
#include "lowrank/prox.hpp"
#include "lowrank/solver.hpp"

namespace lowrank {

/// A-posteriori verdict on a convex solve of a rank-constrained problem.
/// tight means the relaxation solution already satisfies the rank
/// constraint, which certifies it solves the nonconvex problem; the bounds
/// sandwich the nonconvex optimum.
struct Certificate {
    Index numerical_rank = 0;
    double rank_tol = 1e-6;
    bool tight = false;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    Matrix feasible_candidate;
};

/// Number of singular values strictly greater than tol * sigma_max
/// (0 for the zero matrix).
inline Index numerical_rank(const Matrix& x, double tol) {
    require_positive(tol, "numerical_rank", "tol");
    const Vector s = svd(x).s;
    if (s.size() == 0 || s[0] == 0.0) return 0;
    const double cutoff = tol * s[0];
    Index rank = 0;
    while (rank < s.size() && s[rank] > cutoff) ++rank;
    return rank;
}

/// True iff the relaxation solution is feasible for the rank constraint,
/// i.e. the relaxation was exact.
inline bool tightness_check(const Matrix& x_star, Index r, double rank_tol) {
    return numerical_rank(x_star, rank_tol) <= r;
}

struct GapBounds {
    double lower = 0.0;
    double upper = 0.0;
    Matrix candidate;
};

/// Bound the rank-constrained optimum from both sides: the relaxed objective
/// at x_star is a valid lower bound, and a feasible point found by
/// alternating proj_rank with the constraint projection (started at x_star)
/// gives an upper bound through the original objective. If the alternation
/// fails to reach feasibility within 1e-6, the upper bound is +inf.
inline GapBounds gap_bounds(const ObjectiveFn& relaxed_objective, const ObjectiveFn& original_objective,
                            const Matrix& x_star, Index r,
                            const std::function<Matrix(const Matrix&)>& constraint_proj) {
    GapBounds out;
    out.lower = relaxed_objective(x_star);

    Matrix c = x_star;
    double res_rank = std::numeric_limits<double>::infinity();
    double res_con = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
        c = constraint_proj(proj_rank(c, r));
        res_rank = (c - proj_rank(c, r)).norm();
        res_con = (c - constraint_proj(c)).norm();
        if (res_rank <= 1e-9 && res_con <= 1e-9) break;
    }
    out.candidate = c;
    out.upper = (res_rank <= 1e-6 && res_con <= 1e-6) ? original_objective(c)
                                                      : std::numeric_limits<double>::infinity();
    return out;
}

inline Certificate make_certificate(const Matrix& x_star, Index r, double rank_tol,
                                    const GapBounds& bounds) {
    Certificate cert;
    cert.numerical_rank = numerical_rank(x_star, rank_tol);
    cert.rank_tol = rank_tol;
    cert.tight = cert.numerical_rank <= r;
    cert.lower_bound = bounds.lower;
    cert.upper_bound = bounds.upper;
    cert.feasible_candidate = bounds.candidate;
    return cert;
}

inline void render_certificate_text(std::ostream& os, const Certificate& cert, Index r) {
    os << "certificate:\n"
       << "  numerical rank " << cert.numerical_rank << " (relative tol " << cert.rank_tol
       << "), target rank " << r << "\n"
       << "  relaxation " << (cert.tight ? "tight: the solution solves the rank-constrained problem"
                                         : "not tight: bounds below bracket the optimum")
       << "\n"
       << "  objective bounds: [" << cert.lower_bound << ", " << cert.upper_bound << "]\n";
}

inline void render_certificate_kv(std::ostream& os, const Certificate& cert) {
    char buf[64];
    os << "numerical_rank=" << cert.numerical_rank << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cert.rank_tol);
    os << "rank_tol=" << buf << "\n";
    os << "tight=" << (cert.tight ? "true" : "false") << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cert.lower_bound);
    os << "lower_bound=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cert.upper_bound);
    os << "upper_bound=" << buf << "\n";
}

/// Objective helpers for the approximation family
///   minimize (1/2)||N - X||_F^2  subject to rank(X) <= r (+ convex set):
/// the relaxation replaces the quadratic-plus-rank term by its convex
/// envelope (1/2)||X||_{r*}^2 - <N, X> + (1/2)||N||_F^2.

inline ObjectiveFn approx_original_objective(const Matrix& n) {
    return [n](const Matrix& x) { return 0.5 * (n - x).squaredNorm(); };
}

inline ObjectiveFn approx_relaxed_objective(const Matrix& n, Index r) {
    const double half_n_sq = 0.5 * n.squaredNorm();
    return [n, r, half_n_sq](const Matrix& x) {
        const double v = low_rank_inducing_fro_norm(x, r);
        return 0.5 * v * v - n.cwiseProduct(x).sum() + half_n_sq;
    };
}

}  // namespace lowrank
