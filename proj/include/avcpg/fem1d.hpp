#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "avcpg/temporal.hpp"

namespace avcpg {

/// Uniform periodic mesh of the unit interval with one fixed per-cell Gauss
/// quadrature rule. Every integral in assembly, diagnostics, and quantity
/// evaluation goes through this single rule, so the pointwise cancellations
/// behind the conservation identities hold exactly for the quadrature-defined
/// functionals.
class PeriodicMesh1D {
  public:
    explicit PeriodicMesh1D(int n_cells, int quad_points_per_cell = 10);

    int cells() const { return n_cells_; }
    double h() const { return h_; }
    int qp_per_cell() const { return static_cast<int>(qp_xi_.size()); }
    int qp_total() const { return n_cells_ * qp_per_cell(); }

    /// Reference offset of quadrature point g within a cell, in (0,1).
    double qp_xi(int g) const { return qp_xi_[g]; }
    /// Physical weight of quadrature point g (sums to h over a cell).
    double qp_weight(int g) const { return qp_w_[g]; }
    /// Physical coordinate of quadrature point (c, g).
    double qp_x(int c, int g) const { return (c + qp_xi_[g]) * h_; }

    int right_node(int c) const { return c + 1 == n_cells_ ? 0 : c + 1; }

  private:
    int n_cells_;
    double h_;
    std::vector<double> qp_xi_;
    std::vector<double> qp_w_;
};

/// Periodic piecewise-linear scalar field given by its nodal values.
struct NodalField {
    Eigen::VectorXd v;

    NodalField() = default;
    explicit NodalField(Eigen::VectorXd values) : v(std::move(values)) {}
    static NodalField zero(const PeriodicMesh1D& mesh) {
        return NodalField(Eigen::VectorXd::Zero(mesh.cells()));
    }

    int size() const { return static_cast<int>(v.size()); }

    /// Interpolated value inside cell c at reference offset xi.
    double sample(const PeriodicMesh1D& mesh, int c, double xi) const {
        return v(c) * (1.0 - xi) + v(mesh.right_node(c)) * xi;
    }
    /// Piecewise-constant gradient on cell c.
    double gradient(const PeriodicMesh1D& mesh, int c) const {
        return (v(mesh.right_node(c)) - v(c)) / mesh.h();
    }
    /// Evaluation at an arbitrary point of the unit interval.
    double eval(const PeriodicMesh1D& mesh, double x) const;
};

/// Quadrature of a pointwise function of position over the periodic unit
/// interval. Throws std::runtime_error naming the cell if a sample is not
/// finite.
double integrate(const PeriodicMesh1D& mesh, const std::function<double(double)>& f);

/// Gradient of field f on the given cell, (right - left) / h.
double p1_gradient(const PeriodicMesh1D& mesh, const NodalField& f, int cell);

/// Chain-rule gradient of a pointwise composite f(y_1, ..., y_k) of P1
/// fields: sum of df/dy_i times the cell gradient of y_i, both evaluated at
/// the same quadrature point. Composites are never interpolated back into
/// P1; this keeps pointwise algebraic identities between gradients exact.
double composite_gradient(const std::vector<double>& partials,
                          const std::vector<double>& gradients);

/// Quadrature of w * a * b with w sampled at the quadrature points
/// (row-major cell, then point). Symmetric in a and b; positive definite
/// whenever all weight samples are positive.
double weighted_mass_apply(const PeriodicMesh1D& mesh, const std::vector<double>& w,
                           const NodalField& a, const NodalField& b);

}  // namespace avcpg
