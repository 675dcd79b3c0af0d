// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are fixed in code next to each check.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lowrank/lowrank.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace lowrank;
using namespace lowrank::oracle;
using lowrank::testing::random_matrix;
using lowrank::testing::random_rank_r;
using lowrank::testing::random_spectral;

namespace {

double now_seconds() {
    static const auto start = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Check {
    std::string name;
    std::function<bool(std::string&)> run;
};

double trunc_sq_any(const Vector& x, Index r) {
    std::vector<double> a(x.data(), x.data() + x.size());
    for (auto& v : a) v = v * v;
    std::sort(a.begin(), a.end(), std::greater<double>());
    double s = 0.0;
    for (Index i = 0; i < r; ++i) s += a[static_cast<size_t>(i)];
    return s;
}

double ksup_any(const Vector& x, Index r) {
    std::vector<double> a(x.data(), x.data() + x.size());
    for (auto& v : a) v = std::abs(v);
    std::sort(a.begin(), a.end(), std::greater<double>());
    Vector sorted = Eigen::Map<const Vector>(a.data(), x.size());
    return ksup_norm(sorted, r);
}

// ---------------------------------------------------------------------------

bool prox_oracle_equivalence(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> log_gamma(std::log(0.01), std::log(10.0));
    OracleConfig cfg;
    cfg.restarts = 1;
    cfg.max_steps = 6000;

    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const Index d = 1 + static_cast<Index>(rng() % 6);
        const Index r = 1 + static_cast<Index>(rng() % d);
        const Vector z = random_spectral(rng, d, 1.5);
        const double gamma = std::exp(log_gamma(rng));
        cfg.seed = 1000 + trial;

        const auto obj_top = [&](const Vector& x) {
            return 0.5 * (x - z).squaredNorm() + 0.5 * gamma * trunc_sq_any(x, r);
        };
        worst = std::max(worst, (prox_oracle(obj_top, z, cfg) - vec_prox_top_r_sq(z, r, gamma)).norm());

        worst = std::max(worst, (ball_projection_dykstra(z, r, gamma) -
                                 vec_proj_top_r_ball(z, r, gamma)).norm());

        const auto obj_norm = [&](const Vector& x) {
            return 0.5 * (x - z).squaredNorm() + gamma * ksup_any(x, r);
        };
        worst = std::max(worst, (prox_oracle(obj_norm, z, cfg) - vec_prox_rstar_norm(z, r, gamma)).norm());

        const auto obj_sq = [&](const Vector& x) {
            const double v = ksup_any(x, r);
            return 0.5 * (x - z).squaredNorm() + 0.5 * gamma * v * v;
        };
        worst = std::max(worst, (prox_oracle(obj_sq, z, cfg) - vec_prox_rstar_sq(z, r, gamma)).norm());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max deviation %.3e over 500 triples, %.1f s", worst, elapsed);
    detail = buf;
    return worst <= 1e-6 && elapsed < 60.0;
}

bool norm_oracle_equivalence(std::string& detail) {
    std::mt19937 rng(51515);
    OracleConfig cfg;
    cfg.restarts = 2;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const Index d = 1 + static_cast<Index>(rng() % 6);
        const Index r = 1 + static_cast<Index>(rng() % d);
        const Vector z = random_spectral(rng, d, 2.0);
        cfg.seed = 7000 + trial;
        worst = std::max(worst, std::abs(dual_norm_oracle(z, r, cfg) - ksup_norm(z, r)));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max deviation %.3e over 200 instances", worst);
    detail = buf;
    return worst <= 1e-6;
}

bool closed_form_reductions(std::string& detail) {
    std::mt19937 rng(636363);
    std::uniform_real_distribution<double> unif(0.1, 3.0);
    double worst_svt = 0.0, worst_shrink = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Index rows = 2 + static_cast<Index>(rng() % 4);
        const Index cols = 2 + static_cast<Index>(rng() % 4);
        const Matrix z = random_matrix(rng, rows, cols);
        const double gamma = unif(rng);

        // r = 1 norm prox is singular value soft-thresholding
        const SvdFactors f = svd(z);
        Vector thresholded = (f.s.array() - gamma).max(0.0);
        const Matrix svt = f.u * thresholded.asDiagonal() * f.v.transpose();
        worst_svt = std::max(worst_svt, (mat_prox(ProxKind::norm, z, {gamma, 1}) - svt).norm());

        // full-rank squared prox with a linear tilt is a scaled shift
        const Index rmin = std::min(rows, cols);
        const Matrix n = random_matrix(rng, rows, cols);
        const ProxOp op = compose_linear_shift(ProxKind::squared, n, rmin);
        worst_shrink =
            std::max(worst_shrink, (op(z, gamma) - (z + gamma * n) / (1.0 + gamma)).norm());
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "svt dev %.3e, tilted-shrink dev %.3e", worst_svt, worst_shrink);
    detail = buf;
    return worst_svt <= 1e-9 && worst_shrink <= 1e-9;
}

bool moreau_identities(std::string& detail) {
    std::mt19937 rng(747474);
    std::uniform_real_distribution<double> unif(0.05, 8.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const Index d = 1 + static_cast<Index>(rng() % 6);
        const Index r = 1 + static_cast<Index>(rng() % d);
        const Vector z = random_spectral(rng, d, 2.0);
        const double gamma = unif(rng);
        const double scale = std::max(1.0, z.norm());

        const double split_norm =
            (vec_prox_rstar_norm(z, r, gamma) + vec_proj_top_r_ball(z, r, gamma) - z).norm();
        const double split_sq =
            (vec_prox_rstar_sq(z, r, gamma) +
             gamma * vec_prox_top_r_sq(z / gamma, r, 1.0 / gamma) - z).norm();
        // scaling route: both sides run separate bisections
        const double scaling =
            (vec_proj_top_r_ball(z, r, gamma) - gamma * vec_proj_top_r_ball(z / gamma, r, 1.0)).norm();
        worst = std::max({worst, split_norm / scale, split_sq / scale, scaling / scale});
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max relative residual %.3e over 200 instances", worst);
    detail = buf;
    return worst <= 1e-8;
}

bool envelope_identity(std::string& detail) {
    Matrix n(2, 2);
    n << 0.9, -0.4, -0.4, 0.3;
    double worst = 0.0;
    for (int variant = 0; variant < 2; ++variant) {
        const Matrix data = variant == 0 ? Matrix(Matrix::Zero(2, 2)) : n;
        const EnvelopeGrid grid = envelope_oracle(data, 1, 41);
        const double half_n_sq = 0.5 * data.squaredNorm();
        for (int ia = 0; ia < grid.res; ++ia)
            for (int ib = 0; ib < grid.res; ++ib)
                for (int ic = 0; ic < grid.res; ++ic) {
                    const Matrix x = grid.point(ia, ib, ic);
                    const double v = low_rank_inducing_fro_norm(x, 1);
                    const double closed = half_n_sq - data.cwiseProduct(x).sum() + 0.5 * v * v;
                    worst = std::max(worst, std::abs(grid.at(ia, ib, ic) - closed));
                }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max grid deviation %.3e at 41 points/axis", worst);
    detail = buf;
    return worst <= 1e-3;
}

bool feasible_set_equality(std::string& detail) {
    std::mt19937 rng(858585);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Index r = 1 + static_cast<Index>(rng() % 3);
        const Matrix x = random_rank_r(rng, 5, 4, r);
        worst = std::max(worst, std::abs(low_rank_inducing_fro_norm(x, r) - x.norm()));
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max deviation %.3e over 100 rank-deficient matrices", worst);
    detail = buf;
    return worst <= 1e-9;
}

// Exact recovery of a rank-2 gaussian truth at 70% sampling under the plain
// r*-norm objective: the check is kept at its stated thresholds although the
// minimizer of this convex program is generically not the ground truth here
// (the solve finds sample-consistent points of strictly smaller r*-norm, and
// the r*_2 subdifferential at a rank-2 point caps the escape-direction
// coefficient at sigma_2/||sigma|| < 1, a narrower recovery cone than the
// nuclear norm's). The r = 1 variant recovers and is covered in cli_tests.
bool completion_recovery(std::string& detail) {
    std::mt19937 rng(969696);
    int good = 0;
    double worst_time = 0.0, worst_err = 0.0;
    for (int instance = 0; instance < 10; ++instance) {
        const Matrix truth = random_rank_r(rng, 10, 10, 2);
        std::vector<int> cells(100);
        for (int i = 0; i < 100; ++i) cells[i] = i;
        std::shuffle(cells.begin(), cells.end(), rng);
        std::vector<SampleSet::Entry> entries;
        for (int k = 0; k < 70; ++k)
            entries.push_back({cells[k] / 10, cells[k] % 10, truth(cells[k] / 10, cells[k] % 10)});
        const SampleSet samples = make_sample_set(10, 10, std::move(entries));

        const auto t0 = std::chrono::steady_clock::now();
        const ProxOp prox_f = [](const Matrix& z, double gamma) {
            return mat_prox(ProxKind::norm, z, {gamma, 2});
        };
        const ProxOp prox_g = indicator_prox([&](const Matrix& z) { return proj_samples(z, samples); });
        DrConfig cfg;
        cfg.tol = 1e-9;
        const DrResult res = dr_solve(prox_f, prox_g, proj_samples(Matrix::Zero(10, 10), samples), cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        worst_time = std::max(worst_time, secs);

        const bool tight = tightness_check(res.x, 2, 1e-6);
        const double rel_err = (res.x - truth).norm() / truth.norm();
        if (tight && rel_err <= 1e-4 && secs <= 5.0) {
            ++good;
            worst_err = std::max(worst_err, rel_err);
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d/10 tight recoveries, worst recovered err %.2e, worst time %.2f s",
                  good, worst_err, worst_time);
    detail = buf;
    return good >= 8 && worst_time <= 5.0;
}

// The error comparison in this check cannot come out in the solution's
// favor: proj_hankel contracts toward the Hankel data, so the rank-infeasible
// one-step heuristic satisfies err(heuristic) <= err(truncated SVD) <=
// err(any Hankel matrix of rank <= r). A tight solution is the best
// rank-feasible Hankel matrix (it beats converged rank/Hankel alternation,
// which is asserted in the detail numbers) yet always loses this comparison.
bool hankel_structure(std::string& detail) {
    std::mt19937 rng(107107);
    std::uniform_real_distribution<double> rho1_dist(0.3, 0.9);
    std::uniform_real_distribution<double> rho2_dist(-0.6, -0.1);
    std::uniform_real_distribution<double> c2_dist(0.05, 0.2);

    const Index m = 7, n = 7;
    double worst_variance = 0.0;
    int tight_count = 0, beaten = 0, beat_alternation = 0;
    double worst_excess = 0.0;
    for (int instance = 0; instance < 20; ++instance) {
        const double rho1 = rho1_dist(rng), rho2 = rho2_dist(rng), c2 = c2_dist(rng);
        Vector h(m + n - 1);
        for (Index t = 0; t < h.size(); ++t)
            h[t] = std::pow(rho1, static_cast<double>(t)) + c2 * std::pow(rho2, static_cast<double>(t));
        const Matrix data = hankel_from_sequence(m, n, h);

        const ProxOp prox_f = compose_linear_shift(ProxKind::squared, data, 1);
        const ProxOp prox_g = indicator_prox([](const Matrix& z) { return proj_hankel(z); });
        DrConfig cfg;
        cfg.tol = 1e-10;
        cfg.max_iter = 20000;
        const DrResult res = dr_solve(prox_f, prox_g, data, cfg);

        // anti-diagonal variance of the output
        const Vector seq = sequence_from_hankel(res.x);
        const Matrix flat = hankel_from_sequence(m, n, seq);
        double variance = 0.0;
        {
            Vector count = Vector::Zero(m + n - 1);
            Vector sq = Vector::Zero(m + n - 1);
            for (Index j = 0; j < n; ++j)
                for (Index i = 0; i < m; ++i) {
                    const double dev = res.x(i, j) - flat(i, j);
                    sq[i + j] += dev * dev;
                    count[i + j] += 1.0;
                }
            variance = (sq.cwiseQuotient(count)).maxCoeff();
        }
        worst_variance = std::max(worst_variance, variance);

        if (tightness_check(res.x, 1, 1e-6)) {
            ++tight_count;
            const double err_solution = (data - res.x).norm();
            const double err_heuristic = (data - proj_hankel(proj_rank(data, 1))).norm();
            if (err_solution <= err_heuristic + 1e-9)
                ++beaten;
            else
                worst_excess = std::max(worst_excess, err_solution - err_heuristic);
            // rank-feasible baseline: converged rank/Hankel alternation
            Matrix c = data;
            for (int k = 0; k < 5000; ++k) c = proj_hankel(proj_rank(c, 1));
            if (err_solution <= (data - c).norm() + 1e-9) ++beat_alternation;
        }
    }
    char buf[224];
    std::snprintf(buf, sizeof(buf),
                  "max anti-diagonal variance %.3e; %d/20 tight, %d of those within one-step heuristic "
                  "error (worst excess %.3e), %d beat converged alternation",
                  worst_variance, tight_count, beaten, worst_excess, beat_alternation);
    detail = buf;
    return worst_variance <= 1e-16 && beaten == tight_count;
}

bool dr_sanity(std::string& detail) {
    // clamped scalar quadratic
    Matrix three(1, 1);
    three << 3.0;
    const ProxOp prox_f = compose_linear_shift(ProxKind::squared, three, 1);
    const ProxOp prox_g = indicator_prox([](const Matrix& z) { return proj_box(z, 0.0, 1.0); });
    DrConfig cfg;
    cfg.tol = 1e-8;
    cfg.max_iter = 500;
    const DrResult a = dr_solve(prox_f, prox_g, Matrix::Zero(1, 1), cfg);
    const bool a_ok = a.trace.status == DrStatus::converged && std::abs(a.x(0, 0) - 1.0) <= 1e-6;

    // identity proxes fix z0 immediately
    const ProxOp identity = [](const Matrix& z, double) { return z; };
    std::mt19937 rng(3);
    const Matrix z0 = random_matrix(rng, 2, 2);
    const DrResult b = dr_solve(identity, identity, z0, cfg);
    const bool b_ok = b.trace.status == DrStatus::converged && b.trace.iterations == 1 &&
                      (b.x - z0).norm() == 0.0;

    char buf[128];
    std::snprintf(buf, sizeof(buf), "box example: %d iters, residual %.2e; identity example: %d iter",
                  a.trace.iterations, a.trace.final_residual, b.trace.iterations);
    detail = buf;
    return a_ok && b_ok;
}

}  // namespace

int main() {
    now_seconds();  // anchor the wall clock
    const std::vector<Check> checks = {
        {"prox oracle equivalence (500 triples, 1e-6, <60s)", prox_oracle_equivalence},
        {"norm oracle equivalence (200 instances, 1e-6)", norm_oracle_equivalence},
        {"closed-form reductions (SVT and tilted shrink, 1e-9)", closed_form_reductions},
        {"Moreau identities (200 instances, 1e-8)", moreau_identities},
        {"envelope identity (41 points/axis, 1e-3)", envelope_identity},
        {"feasible-set equality (100 matrices, 1e-9)", feasible_set_equality},
        {"completion recovery (10x10 rank 2, 70% samples)", completion_recovery},
        {"hankel structure preservation and heuristic comparison", hankel_structure},
        {"dr sanity (trivial examples, 1e-8 in 500 iterations)", dr_sanity},
    };

    int failures = 0;
    for (const auto& check : checks) {
        std::string detail;
        bool ok = false;
        try {
            ok = check.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("%s  %s  [%s]\n", ok ? "PASS" : "FAIL", check.name.c_str(), detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed (%.1f s total)\n", static_cast<int>(checks.size()) - failures,
                checks.size(), now_seconds());
    return failures == 0 ? 0 : 1;
}
