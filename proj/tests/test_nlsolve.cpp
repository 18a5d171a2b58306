#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "avcpg/nlsolve.hpp"

using namespace avcpg;

TEST_CASE("newton solves a linear system in one iteration") {
    const Eigen::VectorXd c = (Eigen::VectorXd(3) << 1.0, -2.0, 0.5).finished();
    auto residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return x - c; };
    SolverConfig cfg;
    auto [x, report] = newton_solve(residual, Eigen::VectorXd::Zero(3), cfg);
    CHECK(report.converged);
    CHECK(report.iterations == 1);
    CHECK((x - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scalar newton: sqrt of four") {
    auto residual = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd r(1);
        r(0) = x(0) * x(0) - 4.0;
        return r;
    };
    SolverConfig cfg;
    auto [x, report] = newton_solve(residual, Eigen::VectorXd::Constant(1, 3.0), cfg);
    CHECK(report.converged);
    CHECK(std::abs(x(0) - 2.0) < 1e-10);
}

TEST_CASE("degenerate cubic root converges slowly") {
    // Oracle: undamped Newton on x^3 contracts by 2/3 per iteration, so from
    // x0 = 1 it needs ceil(log(tol^(1/3)) / log(2/3)) = 23 iterations to push
    // the residual below 1e-12.
    int oracle_iters = 0;
    {
        double x = 1.0;
        while (std::abs(x * x * x) > 1e-12) {
            x -= (x * x * x) / (3.0 * x * x);
            ++oracle_iters;
        }
    }
    CHECK(oracle_iters == 23);

    auto residual = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd r(1);
        r(0) = x(0) * x(0) * x(0);
        return r;
    };
    SolverConfig cfg;
    cfg.max_iter = 60;
    auto [x, report] = newton_solve(residual, Eigen::VectorXd::Constant(1, 1.0), cfg);
    CHECK(report.converged);
    CHECK(std::abs(x(0)) < 1e-4);
    CHECK(report.iterations > 10);
    CHECK(report.iterations <= oracle_iters + 10);
}

TEST_CASE("fd_jacobian recovers a linear operator") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = unif(rng);
    Eigen::VectorXd b(4);
    for (int i = 0; i < 4; ++i) b(i) = unif(rng);

    auto residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return a * x - b; };
    Eigen::VectorXd x0(4);
    for (int i = 0; i < 4; ++i) x0(i) = unif(rng);
    const Eigen::MatrixXd jac = fd_jacobian(residual, x0);
    CHECK((jac - a).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("fd_jacobian of x^2 at 3") {
    auto residual = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd r(1);
        r(0) = x(0) * x(0);
        return r;
    };
    const Eigen::MatrixXd jac =
        fd_jacobian(residual, Eigen::VectorXd::Constant(1, 3.0));
    CHECK(std::abs(jac(0, 0) - 6.0) < 1e-6);
}

TEST_CASE("fd_jacobian matches the analytic derivative of a quadratic map") {
    // r_i(x) = x^T A_i x + b_i^T x, Jacobian rows: x^T (A_i + A_i^T) + b_i^T.
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int n = 3;
    std::vector<Eigen::MatrixXd> quad(n, Eigen::MatrixXd(n, n));
    Eigen::MatrixXd lin(n, n);
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) quad[i](r, c) = unif(rng);
        for (int c = 0; c < n; ++c) lin(i, c) = unif(rng);
    }
    auto residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd r(n);
        for (int i = 0; i < n; ++i) r(i) = x.dot(quad[i] * x) + lin.row(i).dot(x);
        return r;
    };
    Eigen::VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0(i) = unif(rng);

    Eigen::MatrixXd analytic(n, n);
    for (int i = 0; i < n; ++i)
        analytic.row(i) = (x0.transpose() * (quad[i] + quad[i].transpose())) + lin.row(i);

    const Eigen::MatrixXd jac = fd_jacobian(residual, x0);
    CHECK((jac - analytic).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("singular jacobian is reported distinctly") {
    auto residual = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd r(2);
        r(0) = x(0) + x(1) - 1.0;
        r(1) = 2.0 * x(0) + 2.0 * x(1) - 5.0;
        return r;
    };
    SolverConfig cfg;
    auto [x, report] = newton_solve(residual, Eigen::VectorXd::Zero(2), cfg);
    CHECK_FALSE(report.converged);
    CHECK(report.failure == SolveFailure::singular_jacobian);
}

TEST_CASE("non-convergence within max_iter is a failure report") {
    // No real root; damped Newton stalls and reports rather than throwing.
    auto residual = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd r(1);
        r(0) = x(0) * x(0) + 1.0;
        return r;
    };
    SolverConfig cfg;
    cfg.max_iter = 20;
    auto [x, report] = newton_solve(residual, Eigen::VectorXd::Constant(1, 2.0), cfg);
    CHECK_FALSE(report.converged);
    CHECK(report.failure != SolveFailure::none);
}

TEST_CASE("iterate guard triggers damping and may floor out") {
    // Root at -1 but the guard forbids nonpositive iterates.
    auto residual = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd r(1);
        r(0) = x(0) + 1.0;
        return r;
    };
    SolverConfig cfg;
    cfg.iterate_ok = [](const Eigen::VectorXd& x) { return x(0) > 0.0; };
    auto [x, report] = newton_solve(residual, Eigen::VectorXd::Constant(1, 1.0), cfg);
    CHECK_FALSE(report.converged);
    CHECK(report.failure == SolveFailure::damping_floor);
    CHECK(x(0) > 0.0);
}

TEST_CASE("picard: constant map lands in one iteration") {
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(2, 4.5);
    auto map = [&](const Eigen::VectorXd&) { return c; };
    SolverConfig cfg;
    auto [x, report] = picard_solve(map, Eigen::VectorXd::Zero(2), cfg);
    CHECK(report.converged);
    CHECK((x - c).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("picard: contraction x/2 + 1 reaches 2") {
    auto map = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return 0.5 * x + Eigen::VectorXd::Constant(1, 1.0);
    };
    SolverConfig cfg;
    cfg.max_iter = 200;
    auto [x, report] = picard_solve(map, Eigen::VectorXd::Zero(1), cfg);
    CHECK(report.converged);
    CHECK(std::abs(x(0) - 2.0) < 1e-10);
}

TEST_CASE("picard: non-contracting map flagged") {
    auto map = [](const Eigen::VectorXd& x) -> Eigen::VectorXd { return 2.0 * x; };
    SolverConfig cfg;
    cfg.max_iter = 25;
    auto [x, report] = picard_solve(map, Eigen::VectorXd::Constant(1, 1.0), cfg);
    CHECK_FALSE(report.converged);
    CHECK(report.failure == SolveFailure::max_iterations);
}
