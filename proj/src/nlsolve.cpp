#include "avcpg/nlsolve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace avcpg {

namespace {

double inf_norm(const Eigen::VectorXd& v) {
    if (!v.allFinite()) return std::numeric_limits<double>::infinity();
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace

std::string SolveReport::failure_text() const {
    switch (failure) {
        case SolveFailure::none: return "none";
        case SolveFailure::max_iterations: return "max_iterations";
        case SolveFailure::singular_jacobian: return "singular_jacobian";
        case SolveFailure::damping_floor: return "damping_floor";
    }
    return "unknown";
}

Eigen::MatrixXd fd_jacobian(const ResidualFn& residual, const Eigen::VectorXd& x,
                            double fd_step) {
    const Eigen::VectorXd r0 = residual(x);
    if (r0.size() != x.size())
        throw std::invalid_argument("fd_jacobian: residual dimension mismatch");
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd jac(n, n);
    Eigen::VectorXd xp = x;
    for (int j = 0; j < n; ++j) {
        const double h = fd_step * std::max(1.0, std::abs(x(j)));
        xp(j) = x(j) + h;
        jac.col(j) = (residual(xp) - r0) / h;
        xp(j) = x(j);
    }
    return jac;
}

std::pair<Eigen::VectorXd, SolveReport> newton_solve(const ResidualFn& residual,
                                                     const Eigen::VectorXd& x0,
                                                     const SolverConfig& cfg) {
    if (cfg.abs_tol <= 0.0 || cfg.max_iter < 1 || cfg.fd_step <= 0.0)
        throw std::invalid_argument("newton_solve: invalid solver configuration");

    Eigen::VectorXd x = x0;
    Eigen::VectorXd r = residual(x);
    if (r.size() != x.size())
        throw std::invalid_argument("newton_solve: residual dimension mismatch");

    SolveReport report;
    const double norm0 = inf_norm(r);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * norm0);
    double norm = norm0;

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        if (norm <= tol) {
            report.converged = true;
            report.iterations = iter;
            report.residual_norm = norm;
            return {x, report};
        }

        const Eigen::MatrixXd jac = fd_jacobian(residual, x, cfg.fd_step);
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
        const Eigen::VectorXd step = lu.solve(-r);
        if (!step.allFinite() || inf_norm(jac * step + r) > 1e-8 * std::max(1.0, norm)) {
            report.iterations = iter;
            report.residual_norm = norm;
            report.failure = SolveFailure::singular_jacobian;
            return {x, report};
        }

        double lambda = cfg.damping_initial;
        bool accepted = false;
        while (lambda >= cfg.damping_min) {
            const Eigen::VectorXd xc = x + lambda * step;
            if (!cfg.iterate_ok || cfg.iterate_ok(xc)) {
                const Eigen::VectorXd rc = residual(xc);
                const double nc = inf_norm(rc);
                if (nc < norm || nc <= tol) {
                    x = xc;
                    r = rc;
                    norm = nc;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            report.iterations = iter + 1;
            report.residual_norm = norm;
            report.failure = SolveFailure::damping_floor;
            return {x, report};
        }
    }

    report.iterations = cfg.max_iter;
    report.residual_norm = norm;
    if (norm <= tol) {
        report.converged = true;
    } else {
        report.failure = SolveFailure::max_iterations;
    }
    return {x, report};
}

std::pair<Eigen::VectorXd, SolveReport> picard_solve(const FixedPointFn& map,
                                                     const Eigen::VectorXd& x0,
                                                     const SolverConfig& cfg) {
    if (cfg.abs_tol <= 0.0 || cfg.max_iter < 1)
        throw std::invalid_argument("picard_solve: invalid solver configuration");

    Eigen::VectorXd x = x0;
    SolveReport report;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        Eigen::VectorXd xn = map(x);
        if (xn.size() != x.size())
            throw std::invalid_argument("picard_solve: map changed dimension");
        const double diff = inf_norm(xn - x);
        x = std::move(xn);
        report.iterations = iter;
        report.residual_norm = diff;
        if (diff <= cfg.abs_tol) {
            report.converged = true;
            return {x, report};
        }
        if (!x.allFinite()) break;
    }
    report.failure = SolveFailure::max_iterations;
    return {x, report};
}

}  // namespace avcpg
