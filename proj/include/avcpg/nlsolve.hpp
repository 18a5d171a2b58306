#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace avcpg {

struct SolverConfig {
    double abs_tol = 1e-12;   // on the inf-norm of the residual
    double rel_tol = 0.0;     // relative to the initial residual norm
    int max_iter = 30;
    double fd_step = 1.4901161193847656e-8;  // sqrt(machine eps)
    double damping_initial = 1.0;
    double damping_min = 9.313225746154785e-10;  // 2^-30

    // Optional admissibility test for candidate iterates (positivity guards
    // and the like). An inadmissible candidate is treated as a residual
    // increase and triggers damping.
    std::function<bool(const Eigen::VectorXd&)> iterate_ok;
};

enum class SolveFailure {
    none,
    max_iterations,
    singular_jacobian,
    damping_floor,
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double residual_norm = 0.0;
    SolveFailure failure = SolveFailure::none;

    std::string failure_text() const;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using FixedPointFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Forward-difference Jacobian, column j = (r(x + h e_j) - r(x)) / h with
/// h = fd_step * max(1, |x_j|).
Eigen::MatrixXd fd_jacobian(const ResidualFn& residual, const Eigen::VectorXd& x,
                            double fd_step = 1.4901161193847656e-8);

/// Damped Newton iteration on r(x) = 0 with dense LU steps. Backtracking
/// halves the step until the residual norm decreases; hitting the damping
/// floor or the iteration cap returns a failure report with x left at the
/// best iterate. Non-convergence is an expected outcome and is reported,
/// not thrown.
std::pair<Eigen::VectorXd, SolveReport> newton_solve(const ResidualFn& residual,
                                                     const Eigen::VectorXd& x0,
                                                     const SolverConfig& cfg);

/// Fixed-point iteration x <- g(x), converged when the successive-difference
/// inf-norm drops below abs_tol.
std::pair<Eigen::VectorXd, SolveReport> picard_solve(const FixedPointFn& map,
                                                     const Eigen::VectorXd& x0,
                                                     const SolverConfig& cfg);

}  // namespace avcpg
