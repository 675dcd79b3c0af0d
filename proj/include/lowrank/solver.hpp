#pragma once

#include <functional>
#include <ostream>
#include <utility>
#include <vector>

#include "lowrank/prox.hpp"

namespace lowrank {

/// A prox operator over matrices: maps (z, gamma) to prox_{gamma f}(z).
/// Indicator proxes (plain projections) ignore gamma.
using ProxOp = std::function<Matrix(const Matrix&, double)>;

/// Optional objective evaluator used for trace logging only.
using ObjectiveFn = std::function<double(const Matrix&)>;

struct DrConfig {
    double gamma = 1.0;    // prox step size
    double lambda = 1.0;   // relaxation, in (0, 2)
    double tol = 1e-8;     // fixed-point residual ||y_k - x_k||_F
    int max_iter = 10000;
    int log_every = 0;     // 0 = keep no per-iteration records

    void validate() const {
        require_positive(gamma, "DrConfig", "gamma");
        require_positive(tol, "DrConfig", "tol");
        if (!(lambda > 0.0 && lambda < 2.0))
            throw std::invalid_argument("DrConfig: lambda must lie in (0, 2)");
        if (max_iter < 1) throw std::invalid_argument("DrConfig: max_iter must be positive");
        if (log_every < 0) throw std::invalid_argument("DrConfig: log_every must be nonnegative");
    }
};

enum class DrStatus { converged, max_iter };

struct DrRecord {
    int iter = 0;
    double residual = 0.0;
    double objective = std::numeric_limits<double>::quiet_NaN();
};

struct DrTrace {
    std::vector<DrRecord> records;  // populated when cfg.log_every > 0
    DrStatus status = DrStatus::max_iter;
    int iterations = 0;             // iterations actually performed
    double final_residual = std::numeric_limits<double>::quiet_NaN();

    const char* status_name() const {
        return status == DrStatus::converged ? "converged" : "max_iter";
    }
};

struct DrResult {
    Matrix x;
    DrTrace trace;
};

/// Relaxed Douglas-Rachford splitting for min f(x) + g(x):
///   x_k = prox_{gamma g}(z_k)
///   y_k = prox_{gamma f}(2 x_k - z_k)
///   z_{k+1} = z_k + lambda (y_k - x_k)
/// Returns the first x_k whose fixed-point residual ||y_k - x_k||_F falls
/// below cfg.tol, or the iterate at the iteration cap.
inline DrResult dr_solve(const ProxOp& prox_f, const ProxOp& prox_g, const Matrix& z0,
                         const DrConfig& cfg, const ObjectiveFn& objective = nullptr) {
    cfg.validate();
    require_finite(z0, "dr_solve: z0");

    auto checked = [&](const Matrix& m, int iter, const char* who) -> const Matrix& {
        if (m.rows() != z0.rows() || m.cols() != z0.cols())
            throw std::invalid_argument(std::string("dr_solve: ") + who +
                                        " changed the iterate shape at iteration " + std::to_string(iter));
        if (!m.allFinite())
            throw std::runtime_error(std::string("dr_solve: non-finite iterate from ") + who +
                                     " at iteration " + std::to_string(iter));
        return m;
    };

    DrTrace trace;
    Matrix z = z0;
    Matrix x;
    for (int k = 0; k < cfg.max_iter; ++k) {
        x = prox_g(z, cfg.gamma);
        checked(x, k, "prox_g");
        Matrix y = prox_f(2.0 * x - z, cfg.gamma);
        checked(y, k, "prox_f");
        const double residual = (y - x).norm();

        trace.iterations = k + 1;
        trace.final_residual = residual;
        const bool done = residual <= cfg.tol || k + 1 == cfg.max_iter;
        if (cfg.log_every > 0 && (k % cfg.log_every == 0 || done)) {
            DrRecord rec;
            rec.iter = k;
            rec.residual = residual;
            if (objective) rec.objective = objective(x);
            trace.records.push_back(rec);
        }
        if (residual <= cfg.tol) {
            trace.status = DrStatus::converged;
            return DrResult{std::move(x), std::move(trace)};
        }
        z += cfg.lambda * (y - x);
    }
    trace.status = DrStatus::max_iter;
    return DrResult{std::move(x), std::move(trace)};
}

/// Trace export: one tab-separated line per record, "iter<TAB>residual<TAB>objective".
inline void write_trace(std::ostream& os, const DrTrace& trace) {
    char line[96];
    for (const auto& rec : trace.records) {
        std::snprintf(line, sizeof(line), "%d\t%.17g\t%.17g\n", rec.iter, rec.residual, rec.objective);
        os << line;
    }
}

/// Prox operator of X -> gamma * (f(X) - <N, X>) where f is the low-rank
/// inducing norm (kind = norm) or half its square (kind = squared): tilting
/// by a linear term shifts the prox argument by gamma * N.
inline ProxOp compose_linear_shift(ProxKind kind, const Matrix& n, Index r) {
    require_finite(n, "compose_linear_shift");
    require_rank(r, std::min(n.rows(), n.cols()), "compose_linear_shift");
    return [kind, n, r](const Matrix& z, double gamma) {
        if (z.rows() != n.rows() || z.cols() != n.cols())
            throw std::invalid_argument("compose_linear_shift: shape mismatch");
        return mat_prox(kind, z + gamma * n, ProxParams{gamma, r});
    };
}

/// Wrap a plain projection as the prox of its indicator function.
inline ProxOp indicator_prox(std::function<Matrix(const Matrix&)> projection) {
    return [proj = std::move(projection)](const Matrix& z, double) { return proj(z); };
}

}  // namespace lowrank
