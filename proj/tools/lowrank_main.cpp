// Command-line front end for the low-rank optimization toolkit:
//   norms     evaluate Frobenius / truncated / low-rank inducing norms
//   prox      evaluate a matrix prox, optionally self-checking the Moreau split
//   complete  matrix completion under the low-rank inducing norm
//   approx    constrained low-rank approximation (convex-envelope objective)
//   hankel    Hankel low-rank approximation of an impulse-response sequence
//
// Exit codes: 0 converged and tight, 2 converged but not tight (or a failed
// --check), 3 iteration cap reached, 4 input error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lowrank/lowrank.hpp"

namespace {

using namespace lowrank;

constexpr int kExitTight = 0;
constexpr int kExitNotTight = 2;
constexpr int kExitMaxIter = 3;
constexpr int kExitInputError = 4;

struct SolverFlags {
    double gamma = 1.0;
    double lambda = 1.0;
    double tol = 1e-8;
    int max_iter = 10000;
    double rank_tol = 1e-6;
    int log_every = 1;
    std::string trace_path;
    std::string out_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--gamma", gamma, "prox step size (default 1)");
        cmd->add_option("--lambda", lambda, "relaxation in (0,2) (default 1)");
        cmd->add_option("--tol", tol, "fixed-point residual tolerance (default 1e-8)");
        cmd->add_option("--max-iter", max_iter, "iteration cap (default 10000)");
        cmd->add_option("--rank-tol", rank_tol, "relative rank tolerance for the certificate (default 1e-6)");
        cmd->add_option("--trace", trace_path, "write per-iteration records to this path");
        cmd->add_option("--log-every", log_every, "record every k-th iteration in the trace (default 1)");
        cmd->add_option("--out", out_path, "write the solution matrix to this path");
    }

    DrConfig config() const {
        DrConfig cfg;
        cfg.gamma = gamma;
        cfg.lambda = lambda;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.log_every = trace_path.empty() ? 0 : std::max(1, log_every);
        return cfg;
    }
};

void print_value(const char* name, double v) {
    std::printf("%s=%.12g\n", name, v);
}

void write_or_print_matrix(const std::string& path, const Matrix& m, const char* label) {
    if (path.empty()) {
        std::printf("%s:\n", label);
        write_matrix(std::cout, m);
    } else {
        write_matrix_file(path, m);
        std::printf("%s written: %s\n", label, path.c_str());
    }
}

/// Shared tail of every solver command: certificate, trace, report, exit code.
int report_solve(const DrResult& res, const SolverFlags& flags, Index r,
                 const ObjectiveFn& relaxed, const ObjectiveFn& original,
                 const std::function<Matrix(const Matrix&)>& constraint_proj, double seconds,
                 const std::string& config_echo) {
    const GapBounds bounds = gap_bounds(relaxed, original, res.x, r, constraint_proj);
    const Certificate cert = make_certificate(res.x, r, flags.rank_tol, bounds);

    std::printf("config: %s\n", config_echo.c_str());
    std::printf("status: %s after %d iterations (residual %.3e, tol %.3e)\n", res.trace.status_name(),
                res.trace.iterations, res.trace.final_residual, flags.tol);
    render_certificate_text(std::cout, cert, r);
    std::printf("[certificate]\n");
    render_certificate_kv(std::cout, cert);

    if (!flags.trace_path.empty()) {
        std::ofstream out(flags.trace_path);
        if (!out) throw std::runtime_error(flags.trace_path + ": cannot open for writing");
        write_trace(out, res.trace);
        std::printf("trace written: %s\n", flags.trace_path.c_str());
    }
    write_or_print_matrix(flags.out_path, res.x, "solution");
    std::printf("wall time: %.3f s\n", seconds);

    if (res.trace.status == DrStatus::max_iter) return kExitMaxIter;
    return cert.tight ? kExitTight : kExitNotTight;
}

std::string echo_config(const SolverFlags& flags, Index r) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "gamma=%g lambda=%g tol=%g max_iter=%d r=%lld rank_tol=%g",
                  flags.gamma, flags.lambda, flags.tol, flags.max_iter, static_cast<long long>(r),
                  flags.rank_tol);
    return buf;
}

int cmd_norms(const std::string& matrix_path, Index r) {
    const Matrix x = read_matrix_file(matrix_path);
    print_value("frobenius", frobenius_norm(x));
    print_value("truncated", truncated_fro_norm(x, r));
    print_value("low_rank_inducing", low_rank_inducing_fro_norm(x, r));
    return kExitTight;
}

int cmd_prox(const std::string& matrix_path, const std::string& kind_name, Index r, double gamma,
             const std::string& out_path, bool check) {
    const Matrix z = read_matrix_file(matrix_path);
    ProxKind kind;
    if (kind_name == "norm")
        kind = ProxKind::norm;
    else if (kind_name == "squared")
        kind = ProxKind::squared;
    else
        throw std::invalid_argument("prox: kind must be 'norm' or 'squared'");

    const Matrix result = mat_prox(kind, z, {gamma, r});
    write_or_print_matrix(out_path, result, "prox");

    if (check) {
        // Moreau split of the two kernels on the input spectrum; both must
        // reassemble the spectrum of z
        const Vector s = svd(z).s;
        const double scale = std::max(1.0, s.norm());
        const double res_norm =
            (vec_prox_rstar_norm(s, r, gamma) + vec_proj_top_r_ball(s, r, gamma) - s).norm() / scale;
        const double res_sq =
            (vec_prox_rstar_sq(s, r, gamma) + gamma * vec_prox_top_r_sq(s / gamma, r, 1.0 / gamma) - s)
                .norm() /
            scale;
        const bool ok = res_norm <= 1e-8 && res_sq <= 1e-8;
        std::printf("check: moreau_norm_residual=%.3e moreau_squared_residual=%.3e -> %s\n", res_norm,
                    res_sq, ok ? "ok" : "FAILED");
        if (!ok) return kExitNotTight;
    }
    return kExitTight;
}

int cmd_complete(const std::string& samples_path, Index rows, Index cols, Index r,
                 const SolverFlags& flags) {
    const SampleSet samples = read_samples_file(samples_path, rows, cols);
    const auto t0 = std::chrono::steady_clock::now();

    const ProxOp prox_f = [r](const Matrix& z, double gamma) {
        return mat_prox(ProxKind::norm, z, {gamma, r});
    };
    const auto project = [&samples](const Matrix& z) { return proj_samples(z, samples); };
    const ProxOp prox_g = indicator_prox(project);

    const ObjectiveFn relaxed = [r](const Matrix& x) { return low_rank_inducing_fro_norm(x, r); };
    const ObjectiveFn original = [](const Matrix& x) { return frobenius_norm(x); };

    const Matrix z0 = proj_samples(Matrix::Zero(rows, cols), samples);
    const DrResult res = dr_solve(prox_f, prox_g, z0, flags.config(), relaxed);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report_solve(res, flags, r, relaxed, original, project, seconds, echo_config(flags, r));
}

int cmd_approx(const std::string& matrix_path, Index r, const std::string& constraint, double lo,
               double hi, const SolverFlags& flags) {
    const Matrix n = read_matrix_file(matrix_path);
    const auto t0 = std::chrono::steady_clock::now();

    std::function<Matrix(const Matrix&)> project;
    if (constraint == "none")
        project = [](const Matrix& z) { return z; };
    else if (constraint == "nonneg")
        project = [](const Matrix& z) { return proj_nonneg(z); };
    else if (constraint == "box")
        project = [lo, hi](const Matrix& z) { return proj_box(z, lo, hi); };
    else
        throw std::invalid_argument("approx: unknown constraint '" + constraint + "'");

    const ProxOp prox_f = compose_linear_shift(ProxKind::squared, n, r);
    const ProxOp prox_g = indicator_prox(project);
    const ObjectiveFn relaxed = approx_relaxed_objective(n, r);
    const ObjectiveFn original = approx_original_objective(n);

    const DrResult res = dr_solve(prox_f, prox_g, project(n), flags.config(), relaxed);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report_solve(res, flags, r, relaxed, original, project, seconds, echo_config(flags, r));
}

int cmd_hankel(const std::string& sequence_path, Index m, Index n_cols, Index r,
               const std::string& seq_out, const SolverFlags& flags) {
    const Vector h = read_sequence_file(sequence_path);
    if (h.size() != m + n_cols - 1)
        throw std::invalid_argument("hankel: sequence length " + std::to_string(h.size()) +
                                    " does not match m+n-1 = " + std::to_string(m + n_cols - 1));
    const Matrix data = hankel_from_sequence(m, n_cols, h);
    const auto t0 = std::chrono::steady_clock::now();

    const auto project = [](const Matrix& z) { return proj_hankel(z); };
    const ProxOp prox_f = compose_linear_shift(ProxKind::squared, data, r);
    const ProxOp prox_g = indicator_prox(project);
    const ObjectiveFn relaxed = approx_relaxed_objective(data, r);
    const ObjectiveFn original = approx_original_objective(data);

    const DrResult res = dr_solve(prox_f, prox_g, data, flags.config(), relaxed);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    // truncate-then-project heuristic for the comparison line
    const Matrix heuristic = proj_hankel(proj_rank(data, r));
    std::printf("frobenius error: solution %.9e, truncate-then-project heuristic %.9e\n",
                (data - res.x).norm(), (data - heuristic).norm());

    const int code =
        report_solve(res, flags, r, relaxed, original, project, seconds, echo_config(flags, r));
    const Vector seq = sequence_from_hankel(res.x);
    if (seq_out.empty()) {
        std::printf("solution sequence:\n");
        write_sequence(std::cout, seq);
    } else {
        std::ofstream out(seq_out);
        if (!out) throw std::runtime_error(seq_out + ": cannot open for writing");
        write_sequence(out, seq);
        std::printf("solution sequence written: %s\n", seq_out.c_str());
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-rank optimization toolkit"};
    app.require_subcommand(1);

    std::string matrix_path, samples_path, sequence_path, kind, constraint = "none";
    std::string prox_out, seq_out;
    long long r = 1, rows = 0, cols = 0, hm = 0, hn = 0;
    double gamma = 1.0, lo = 0.0, hi = 0.0;
    bool check = false;
    SolverFlags complete_flags, approx_flags, hankel_flags;

    CLI::App* norms = app.add_subcommand("norms", "print Frobenius, truncated and low-rank inducing norms");
    norms->add_option("matrix", matrix_path, "matrix file (one comma-separated row per line)")->required();
    norms->add_option("r", r, "rank parameter")->required();

    CLI::App* prox = app.add_subcommand("prox", "evaluate a matrix prox");
    prox->add_option("matrix", matrix_path, "matrix file")->required();
    prox->add_option("kind", kind, "norm | squared")->required();
    prox->add_option("r", r, "rank parameter")->required();
    prox->add_option("gamma", gamma, "prox scale")->required();
    prox->add_option("--out", prox_out, "write the prox to this path");
    prox->add_flag("--check", check, "verify the Moreau split of the output");

    CLI::App* complete = app.add_subcommand("complete", "matrix completion from sampled entries");
    complete->add_option("samples", samples_path, "sample file (i,j,value per line)")->required();
    complete->add_option("rows", rows, "row count")->required();
    complete->add_option("cols", cols, "column count")->required();
    complete->add_option("r", r, "rank parameter")->required();
    complete_flags.attach(complete);

    CLI::App* approx = app.add_subcommand("approx", "constrained low-rank approximation");
    approx->add_option("matrix", matrix_path, "data matrix file")->required();
    approx->add_option("r", r, "rank parameter")->required();
    approx->add_option("--constraint", constraint, "none | nonneg | box (default none)");
    approx->add_option("--lo", lo, "box lower bound");
    approx->add_option("--hi", hi, "box upper bound");
    approx_flags.attach(approx);

    CLI::App* hankel = app.add_subcommand("hankel", "Hankel low-rank approximation of a sequence");
    hankel->add_option("sequence", sequence_path, "sequence file (one value per line)")->required();
    hankel->add_option("m", hm, "Hankel row count")->required();
    hankel->add_option("n", hn, "Hankel column count")->required();
    hankel->add_option("r", r, "rank parameter")->required();
    hankel->add_option("--seq-out", seq_out, "write the solution sequence to this path");
    hankel_flags.attach(hankel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        if (norms->parsed()) return cmd_norms(matrix_path, r);
        if (prox->parsed()) return cmd_prox(matrix_path, kind, r, gamma, prox_out, check);
        if (complete->parsed()) return cmd_complete(samples_path, rows, cols, r, complete_flags);
        if (approx->parsed()) return cmd_approx(matrix_path, r, constraint, lo, hi, approx_flags);
        if (hankel->parsed()) return cmd_hankel(sequence_path, hm, hn, r, seq_out, hankel_flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
