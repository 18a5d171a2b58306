#include "avcpg/fem1d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace avcpg {

PeriodicMesh1D::PeriodicMesh1D(int n_cells, int quad_points_per_cell)
    : n_cells_(n_cells), h_(1.0 / n_cells) {
    if (n_cells < 2) throw std::invalid_argument("PeriodicMesh1D: need at least 2 cells");
    if (quad_points_per_cell < 1)
        throw std::invalid_argument("PeriodicMesh1D: need at least 1 quadrature point");
    const QuadratureRule rule = gauss_rule(quad_points_per_cell);
    qp_xi_ = rule.nodes;
    qp_w_.resize(rule.size());
    for (int g = 0; g < rule.size(); ++g) qp_w_[g] = h_ * rule.weights[g];
}

double NodalField::eval(const PeriodicMesh1D& mesh, double x) const {
    double xr = x - std::floor(x);  // wrap into [0,1)
    const double s = xr / mesh.h();
    int c = static_cast<int>(s);
    if (c >= mesh.cells()) c = mesh.cells() - 1;
    return sample(mesh, c, s - c);
}

double integrate(const PeriodicMesh1D& mesh, const std::function<double(double)>& f) {
    double total = 0.0;
    for (int c = 0; c < mesh.cells(); ++c) {
        for (int g = 0; g < mesh.qp_per_cell(); ++g) {
            const double val = f(mesh.qp_x(c, g));
            if (!std::isfinite(val))
                throw std::runtime_error("integrate: non-finite sample in cell " +
                                         std::to_string(c));
            total += mesh.qp_weight(g) * val;
        }
    }
    return total;
}

double p1_gradient(const PeriodicMesh1D& mesh, const NodalField& f, int cell) {
    return f.gradient(mesh, cell);
}

double composite_gradient(const std::vector<double>& partials,
                          const std::vector<double>& gradients) {
    double g = 0.0;
    for (size_t i = 0; i < partials.size(); ++i) g += partials[i] * gradients[i];
    return g;
}

double weighted_mass_apply(const PeriodicMesh1D& mesh, const std::vector<double>& w,
                           const NodalField& a, const NodalField& b) {
    if (static_cast<int>(w.size()) != mesh.qp_total())
        throw std::invalid_argument("weighted_mass_apply: weight samples misaligned");
    double total = 0.0;
    int at = 0;
    for (int c = 0; c < mesh.cells(); ++c) {
        for (int g = 0; g < mesh.qp_per_cell(); ++g, ++at) {
            const double xi = mesh.qp_xi(g);
            total += mesh.qp_weight(g) * w[at] * a.sample(mesh, c, xi) *
                     b.sample(mesh, c, xi);
        }
    }
    return total;
}

}  // namespace avcpg
