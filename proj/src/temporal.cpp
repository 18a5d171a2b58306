#include "avcpg/temporal.hpp"

#include <cmath>
#include <stdexcept>

namespace avcpg {

namespace {

// Values of the Lagrange polynomials for the given nodes at t. O(n^2),
// fine for the small node counts used in time.
std::vector<double> lagrange_values(const std::vector<double>& nodes, double t) {
    const int n = static_cast<int>(nodes.size());
    std::vector<double> out(n, 1.0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            out[j] *= (t - nodes[k]) / (nodes[j] - nodes[k]);
        }
    }
    return out;
}

std::vector<double> lagrange_derivatives(const std::vector<double>& nodes, double t) {
    const int n = static_cast<int>(nodes.size());
    std::vector<double> out(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double denom = 1.0;
        for (int k = 0; k < n; ++k)
            if (k != j) denom *= nodes[j] - nodes[k];
        double sum = 0.0;
        for (int m = 0; m < n; ++m) {
            if (m == j) continue;
            double prod = 1.0;
            for (int k = 0; k < n; ++k) {
                if (k == j || k == m) continue;
                prod *= t - nodes[k];
            }
            sum += prod;
        }
        out[j] = sum / denom;
    }
    return out;
}

}  // namespace

QuadratureRule gauss_rule(int m) {
    if (m < 1) throw std::invalid_argument("gauss_rule: need at least one point");

    // Golub-Welsch: eigenvalues of the Jacobi matrix for Legendre polynomials
    // give the nodes on [-1,1], the squared first eigenvector components the
    // weights.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k - 1, k) = b;
        jacobi(k, k - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);

    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        rule.nodes[i] = 0.5 * (eig.eigenvalues()(i) + 1.0);
        const double v0 = eig.eigenvectors()(0, i);
        rule.weights[i] = v0 * v0;  // 2*v0^2 on [-1,1], halved for [0,1]
    }
    rule.exactness_degree = 2 * m - 1;
    return rule;
}

TemporalBasis::TemporalBasis(int degree) : degree_(degree) {
    if (degree < 1) throw std::invalid_argument("TemporalBasis: degree must be >= 1");
    const QuadratureRule g = gauss_rule(degree);
    trial_nodes_.push_back(0.0);
    trial_nodes_.insert(trial_nodes_.end(), g.nodes.begin(), g.nodes.end());
    test_nodes_ = g.nodes;
}

std::vector<double> TemporalBasis::trial_values(double t) const {
    return lagrange_values(trial_nodes_, t);
}

std::vector<double> TemporalBasis::trial_derivatives(double t) const {
    return lagrange_derivatives(trial_nodes_, t);
}

std::vector<double> TemporalBasis::test_values(double t) const {
    return lagrange_values(test_nodes_, t);
}

Eigen::VectorXd eval_trial(const TemporalBasis& basis,
                           const std::vector<Eigen::VectorXd>& coeffs, double t) {
    if (static_cast<int>(coeffs.size()) != basis.degree() + 1)
        throw std::invalid_argument("eval_trial: expected S+1 coefficient vectors");
    const std::vector<double> w = basis.trial_values(t);
    Eigen::VectorXd out = w[0] * coeffs[0];
    for (size_t j = 1; j < coeffs.size(); ++j) out += w[j] * coeffs[j];
    return out;
}

Eigen::VectorXd eval_trial_derivative(const TemporalBasis& basis,
                                      const std::vector<Eigen::VectorXd>& coeffs,
                                      double t) {
    if (static_cast<int>(coeffs.size()) != basis.degree() + 1)
        throw std::invalid_argument("eval_trial_derivative: expected S+1 coefficient vectors");
    const std::vector<double> w = basis.trial_derivatives(t);
    Eigen::VectorXd out = w[0] * coeffs[0];
    for (size_t j = 1; j < coeffs.size(); ++j) out += w[j] * coeffs[j];
    return out;
}

Eigen::MatrixXd projection_matrix(const TemporalBasis& basis,
                                  const QuadratureRule& quad_lhs,
                                  const QuadratureRule& quad_rhs) {
    const int s = basis.degree();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(s, s);
    for (int i = 0; i < quad_lhs.size(); ++i) {
        const std::vector<double> chi = basis.test_values(quad_lhs.nodes[i]);
        for (int a = 0; a < s; ++a)
            for (int b = 0; b < s; ++b)
                gram(a, b) += quad_lhs.weights[i] * chi[a] * chi[b];
    }
    Eigen::MatrixXd moments = Eigen::MatrixXd::Zero(s, s + 1);
    for (int k = 0; k < quad_rhs.size(); ++k) {
        const std::vector<double> chi = basis.test_values(quad_rhs.nodes[k]);
        const std::vector<double> ell = basis.trial_values(quad_rhs.nodes[k]);
        for (int a = 0; a < s; ++a)
            for (int m = 0; m <= s; ++m)
                moments(a, m) += quad_rhs.weights[k] * chi[a] * ell[m];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (!lu.isInvertible())
        throw std::runtime_error("projection_matrix: singular temporal Gram system");
    return lu.solve(moments);
}

std::vector<Eigen::VectorXd> temporal_l2_project(
    const TemporalBasis& basis, const std::vector<Eigen::VectorXd>& coeffs,
    const QuadratureRule& rule) {
    if (static_cast<int>(coeffs.size()) != basis.degree() + 1)
        throw std::invalid_argument("temporal_l2_project: expected S+1 coefficient vectors");
    const Eigen::MatrixXd proj = projection_matrix(basis, rule, rule);
    const int s = basis.degree();
    std::vector<Eigen::VectorXd> out(s, Eigen::VectorXd::Zero(coeffs[0].size()));
    for (int a = 0; a < s; ++a)
        for (int m = 0; m <= s; ++m) out[a] += proj(a, m) * coeffs[m];
    return out;
}

}  // namespace avcpg
