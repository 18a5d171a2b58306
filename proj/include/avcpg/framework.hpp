#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "avcpg/nlsolve.hpp"
#include "avcpg/temporal.hpp"

namespace avcpg {

using Vec = Eigen::VectorXd;

/// Expected per-step behaviour of a tracked quantity.
enum class Structure { conserved, non_increasing, non_decreasing, indefinite };

/// Auxiliary-variable samples at one temporal point, one vector per block.
using AuxSample = std::vector<Vec>;

/// Problem abstraction for the auxiliary-variable scheme. A problem supplies
/// the weak forms M, F, F-tilde, the tracked quantities with their Frechet
/// derivatives, and the auxiliary-variable pairings. All form slots are
/// "apply" style: they return the vector of form values against every unit
/// test direction, so the scalar forms (linear in the test argument) are
/// recovered by a dot product. Instances are immutable after construction
/// and safe to share across threads.
struct ProblemDef {
    int dof = 0;                  // spatial dimension of the state u
    std::vector<int> aux_dims;    // dimension of each auxiliary block
    int n_quantities = 0;
    std::vector<Structure> structure;  // per quantity

    /// [M(u; udot, e_a)]_a. Possibly nonlinear in u, linear in udot.
    std::function<Vec(const Vec& u, const Vec& udot)> m_apply;
    /// [F(u; e_a)]_a, the unmodified right-hand side (baselines, tests).
    std::function<Vec(const Vec& u)> f_apply;
    /// [Ftilde(u, (w_p); e_a)]_a, the modified right-hand side.
    std::function<Vec(const Vec& u, const AuxSample& aux)> ftilde_apply;
    /// [M_p(u; e_a, w)]_a, the auxiliary-definition pairing; linear in w.
    std::function<Vec(int p, const Vec& u, const Vec& w)> aux_m_apply;
    /// [M_p(u; e_a, w_p(u))]_a with w_p(u) the exact associated field; this
    /// is the Frechet-derivative right-hand side of the auxiliary system.
    std::function<Vec(int p, const Vec& u)> aux_rhs_apply;
    /// Cheap pointwise approximation of the exact associated field, used to
    /// seed the slab solve.
    std::function<Vec(int p, const Vec& u)> aux_guess;
    /// Tracked quantities Q_q(u).
    std::function<std::vector<double>(const Vec& u)> q_values;
    /// Q'_q(u; v), used for cross-checks.
    std::function<double(int q, const Vec& u, const Vec& v)> q_derivative;
    /// Discrete test field whose pairing with Ftilde predicts the change of
    /// quantity q (a composite of auxiliary blocks and constants). Returns
    /// an empty vector when no such field is available for q, in which case
    /// the update identity is skipped for that quantity.
    std::function<Vec(int q, const Vec& u, const AuxSample& aux)> q_test_field;

    /// Admissibility of a state sample (positivity constraints etc.).
    std::function<bool(const Vec& u)> state_ok;
    /// Admissibility of an auxiliary block sample.
    std::function<bool(int p, const Vec& w)> aux_ok;

    struct SlabContext;
    struct SlabState;
    /// Problem-specific slab solver, replacing the monolithic Newton path.
    std::function<SolveReport(const SlabContext&, SlabState&)> custom_slab_solve;

    // Scalar form views, derived from the apply slots by linearity in the
    // test argument.
    double m_form(const Vec& u, const Vec& udot, const Vec& v) const {
        return m_apply(u, udot).dot(v);
    }
    double f_form(const Vec& u, const Vec& v) const { return f_apply(u).dot(v); }
    double ftilde_form(const Vec& u, const AuxSample& aux, const Vec& v) const {
        return ftilde_apply(u, aux).dot(v);
    }
    double aux_m_form(int p, const Vec& u, const Vec& v, const Vec& w) const {
        return aux_m_apply(p, u, w).dot(v);
    }

    int n_aux() const { return static_cast<int>(aux_dims.size()); }
};

/// All unknown coefficients of one slab: the trial polynomial values at the
/// S interior nodes (u0 is pinned to the incoming state) plus, for each
/// auxiliary block, its values at the S test nodes.
struct ProblemDef::SlabState {
    Vec u0;
    std::vector<Vec> trial;              // size S
    std::vector<std::vector<Vec>> aux;   // aux[p][j], j over test nodes
};

using SlabState = ProblemDef::SlabState;

/// Immutable per-slab data: quadrature rules, dt, and the basis evaluation
/// tables at the quadrature nodes.
struct ProblemDef::SlabContext {
    const ProblemDef* problem = nullptr;
    const TemporalBasis* basis = nullptr;
    QuadratureRule quad_main;   // the slab rule I_n
    QuadratureRule quad_exact;  // near-exact rule for the auxiliary right-hand sides
    double dt = 0.0;

    // Tables at quad_main nodes.
    std::vector<std::vector<double>> trial_at_main;        // [i][0..S]
    std::vector<std::vector<double>> trial_deriv_at_main;  // [i][0..S]
    std::vector<std::vector<double>> test_at_main;         // [i][0..S-1]
    // Tables at quad_exact nodes.
    std::vector<std::vector<double>> trial_at_exact;
    std::vector<std::vector<double>> test_at_exact;

    Vec trial_value(const SlabState& s, const std::vector<double>& w) const;
    Vec trial_derivative(const SlabState& s, const std::vector<double>& w) const;
    AuxSample aux_value(const SlabState& s, const std::vector<double>& w) const;
};

using SlabContext = ProblemDef::SlabContext;

SlabContext make_slab_context(const ProblemDef& problem, const TemporalBasis& basis,
                              const QuadratureRule& quad_main,
                              const QuadratureRule& quad_exact, double dt);

/// Flat unknown layout: trial coefficients u_1..u_S, then auxiliary blocks
/// grouped by block index and test node.
Vec flatten_slab(const SlabContext& ctx, const SlabState& state);
SlabState unflatten_slab(const SlabContext& ctx, const Vec& x, const Vec& u0);

/// Residual of the coupled slab system. Blocks follow the unknown layout:
/// for each test function the weak momentum-form equation, then for each
/// auxiliary block and test function its definition equation, whose
/// right-hand side is integrated with quad_exact.
Vec assemble_residual(const SlabContext& ctx, const SlabState& state);

/// Per-step record of the tracked quantities and the update-identity gaps.
struct StepDiagnostics {
    int step = 0;
    double t_end = 0.0;
    std::vector<double> q_before;
    std::vector<double> q_after;
    std::vector<double> predicted_delta;  // I_n[Ftilde(u,(w_p); w_q)]
    std::vector<double> identity_gap;     // |dQ_q - predicted|, NaN if untracked
    SolveReport solve;
    double slab_residual_norm = 0.0;
};

/// Predicted quantity changes and identity gaps for a converged slab.
/// Quantities without a test field get NaN entries.
void check_update_identity(const SlabContext& ctx, const SlabState& state,
                           StepDiagnostics& diag);

struct AdvanceOptions {
    SolverConfig solver;
    QuadratureRule quad_main;
    QuadratureRule quad_exact;
};

/// Default quadrature choices: Gauss-S for the slab rule and Gauss-(4S+4)
/// for the near-exact right-hand sides.
AdvanceOptions default_advance_options(int degree);

struct StepResult {
    bool ok = false;
    Vec u_next;
    SlabState slab;
    StepDiagnostics diag;
};

/// Advance one slab: assemble, solve (problem-specific solver if present,
/// monolithic damped Newton otherwise), evaluate the trial polynomial at the
/// right endpoint, and fill diagnostics. On solver failure the step is left
/// unapplied and ok is false.
StepResult advance(const ProblemDef& problem, const Vec& u_n, double dt,
                   const TemporalBasis& basis, const AdvanceOptions& opts);

struct TransientSummary {
    int completed_steps = 0;
    bool failed = false;
    int failed_at_step = 0;      // 1-based index of the failing step
    std::string failure_reason;
    std::vector<double> q_initial;
};

using DiagnosticsSink = std::function<void(const StepDiagnostics&)>;

/// Sequential advancement with streaming diagnostics. Stops early on solver
/// failure; the partial trajectory up to the failing step is retained.
TransientSummary run_transient(const ProblemDef& problem, const Vec& u0, double dt,
                               int n_steps, const TemporalBasis& basis,
                               const AdvanceOptions& opts, const DiagnosticsSink& sink);

}  // namespace avcpg
