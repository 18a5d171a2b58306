#pragma once

#include <vector>

#include <Eigen/Dense>

namespace avcpg {

/// Quadrature rule on the reference interval [0,1] with strictly positive
/// weights. Weights sum to one, so an integral over a slab of length dt is
/// recovered by scaling the weighted sum with dt. Positive weights make the
/// rule sign-preserving: nonnegative samples give a nonnegative sum.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int exactness_degree = 0;

    int size() const { return static_cast<int>(nodes.size()); }

    /// Weighted sum of f over the nodes (reference-interval scale).
    template <class F>
    double apply(F&& f) const {
        double s = 0.0;
        for (int i = 0; i < size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

/// m-point Gauss-Legendre rule on [0,1], exact for polynomials of degree
/// <= 2m-1. Nodes are sorted ascending. Throws std::invalid_argument for
/// m < 1.
QuadratureRule gauss_rule(int m);

/// Lagrange bases for one timestep slab: the trial space P_S and the test
/// space P_{S-1}, both over the reference interval [0,1].
///
/// Trial nodes are {0} followed by the S Gauss points, so the incoming state
/// is a plain coefficient and collocation samples are direct unknowns. Test
/// nodes are the S Gauss points. Coefficients are nodal (Lagrange) values.
class TemporalBasis {
  public:
    explicit TemporalBasis(int degree);

    int degree() const { return degree_; }
    const std::vector<double>& trial_nodes() const { return trial_nodes_; }
    const std::vector<double>& test_nodes() const { return test_nodes_; }

    /// Values of the S+1 trial basis polynomials at t.
    std::vector<double> trial_values(double t) const;
    /// Reference-interval derivatives of the trial basis at t.
    std::vector<double> trial_derivatives(double t) const;
    /// Values of the S test basis polynomials at t.
    std::vector<double> test_values(double t) const;

  private:
    int degree_;
    std::vector<double> trial_nodes_;
    std::vector<double> test_nodes_;
};

/// Evaluate the trial interpolant with the given nodal coefficients at t.
/// coeffs must hold S+1 vectors, one per trial node.
Eigen::VectorXd eval_trial(const TemporalBasis& basis,
                           const std::vector<Eigen::VectorXd>& coeffs,
                           double t);

/// Reference-interval derivative of the trial interpolant at t. Mapping to a
/// physical slab of length dt scales this by 1/dt.
Eigen::VectorXd eval_trial_derivative(const TemporalBasis& basis,
                                      const std::vector<Eigen::VectorXd>& coeffs,
                                      double t);

/// L2([0,1])-orthogonal projection of the degree-S trial polynomial onto the
/// test space P_{S-1}, returned as test-node values. The rule must be exact
/// for degree 2S-1 so both the Gram matrix and the moments are exact.
/// Throws std::runtime_error if the Gram system is singular.
std::vector<Eigen::VectorXd> temporal_l2_project(
    const TemporalBasis& basis, const std::vector<Eigen::VectorXd>& coeffs,
    const QuadratureRule& rule);

/// Matrix form of the discrete auxiliary-variable definition for a linear,
/// state-independent mass pairing: row j gives the test-node-j value of the
/// auxiliary as a combination of the S+1 trial nodal values. The left-hand
/// Gram uses quad_lhs (the scheme's slab rule), the right-hand moments use
/// quad_rhs (the near-exact rule). With both rules exact to degree 2S-1 this
/// is the exact L2 projection onto P_{S-1}.
Eigen::MatrixXd projection_matrix(const TemporalBasis& basis,
                                  const QuadratureRule& quad_lhs,
                                  const QuadratureRule& quad_rhs);

}  // namespace avcpg
