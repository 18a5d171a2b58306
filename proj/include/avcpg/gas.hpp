#pragma once

#include <memory>

namespace avcpg {

/// Intensive thermodynamic state derived from (rho, eps).
struct ThermoPoint {
    double p = 0.0;      // pressure
    double theta = 0.0;  // temperature
    double beta = 0.0;   // inverse temperature
    double s = 0.0;      // specific entropy
    double g = 0.0;      // negative specific free energy per unit temperature
};

/// State reconstructed from the pair (g, beta), with the partial derivatives
/// needed for chain-rule gradients of composites.
struct InversePoint {
    double rho = 0.0;
    double p = 0.0;
    double eps = 0.0;
    double drho_dg = 0.0;
    double drho_dbeta = 0.0;
    double dp_dg = 0.0;
    double dp_dbeta = 0.0;
    double deps_dg = 0.0;
    double deps_dbeta = 0.0;
};

/// Constitutive closure: the forward map (rho, eps) -> intensive state and
/// its inverse through the (g, beta) pair. Implementations must satisfy the
/// fundamental thermodynamic relation, which makes rho*dg + eps*dbeta +
/// d[p*beta] vanish identically along any field of states.
class GasLaw {
  public:
    virtual ~GasLaw() = default;
    /// Requires rho > 0 and eps > 0.
    virtual ThermoPoint forward(double rho, double eps) const = 0;
    /// Requires beta > 0.
    virtual InversePoint inverse(double g, double beta) const = 0;
};

/// Ideal gas: p = rho * theta, eps = C_V * p.
class IdealGas final : public GasLaw {
  public:
    explicit IdealGas(double c_v);
    double c_v() const { return c_v_; }
    ThermoPoint forward(double rho, double eps) const override;
    InversePoint inverse(double g, double beta) const override;

  private:
    double c_v_;
};

/// Checked variants rejecting out-of-range inputs with std::invalid_argument.
ThermoPoint forward_state(const GasLaw& gas, double rho, double eps);
InversePoint inverse_state(const GasLaw& gas, double g, double beta);

}  // namespace avcpg
