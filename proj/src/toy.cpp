#include "avcpg/toy.hpp"

#include <cmath>

namespace avcpg {

ProblemDef make_oscillator_problem() {
    ProblemDef prob;
    prob.dof = 2;
    prob.aux_dims = {2};
    prob.n_quantities = 1;
    prob.structure = {Structure::conserved};

    const Eigen::Matrix2d rot = (Eigen::Matrix2d() << 0.0, 1.0, -1.0, 0.0).finished();

    prob.m_apply = [](const Vec&, const Vec& udot) { return udot; };
    prob.f_apply = [rot](const Vec& u) -> Vec { return rot * u; };
    prob.ftilde_apply = [rot](const Vec&, const AuxSample& aux) -> Vec {
        return rot * aux[0];
    };
    prob.aux_m_apply = [](int, const Vec&, const Vec& w) { return w; };
    prob.aux_rhs_apply = [](int, const Vec& u) { return u; };
    prob.aux_guess = [](int, const Vec& u) { return u; };
    prob.q_values = [](const Vec& u) {
        return std::vector<double>{0.5 * u.squaredNorm()};
    };
    prob.q_derivative = [](int, const Vec& u, const Vec& v) { return u.dot(v); };
    prob.q_test_field = [](int, const Vec&, const AuxSample& aux) { return aux[0]; };
    return prob;
}

ProblemDef make_decay_problem() {
    ProblemDef prob;
    prob.dof = 1;
    prob.aux_dims = {1};
    prob.n_quantities = 1;
    prob.structure = {Structure::non_increasing};

    prob.m_apply = [](const Vec&, const Vec& udot) { return udot; };
    prob.f_apply = [](const Vec& u) -> Vec { return -u; };
    prob.ftilde_apply = [](const Vec&, const AuxSample& aux) -> Vec { return -aux[0]; };
    prob.aux_m_apply = [](int, const Vec&, const Vec& w) { return w; };
    prob.aux_rhs_apply = [](int, const Vec& u) { return u; };
    prob.aux_guess = [](int, const Vec& u) { return u; };
    prob.q_values = [](const Vec& u) {
        return std::vector<double>{0.5 * u.squaredNorm()};
    };
    prob.q_derivative = [](int, const Vec& u, const Vec& v) { return u.dot(v); };
    prob.q_test_field = [](int, const Vec&, const AuxSample& aux) { return aux[0]; };
    return prob;
}

ProblemDef make_cubic_problem() {
    ProblemDef prob;
    prob.dof = 1;
    prob.n_quantities = 1;
    prob.structure = {Structure::indefinite};

    prob.m_apply = [](const Vec&, const Vec& udot) { return udot; };
    prob.f_apply = [](const Vec& u) -> Vec { return u.array().cube(); };
    prob.ftilde_apply = [](const Vec& u, const AuxSample&) -> Vec {
        return u.array().cube();
    };
    prob.q_values = [](const Vec& u) {
        return std::vector<double>{0.5 * u.squaredNorm()};
    };
    prob.q_derivative = [](int, const Vec& u, const Vec& v) { return u.dot(v); };
    prob.q_test_field = [](int, const Vec&, const AuxSample&) { return Vec(); };
    return prob;
}

Vec oscillator_exact(const Vec& u0, double t) {
    Vec u(2);
    u(0) = std::cos(t) * u0(0) + std::sin(t) * u0(1);
    u(1) = -std::sin(t) * u0(0) + std::cos(t) * u0(1);
    return u;
}

}  // namespace avcpg
