#include "avcpg/framework.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace avcpg {

namespace {

std::vector<std::vector<double>> tabulate(
    const QuadratureRule& rule,
    const std::function<std::vector<double>(double)>& eval) {
    std::vector<std::vector<double>> out(rule.size());
    for (int i = 0; i < rule.size(); ++i) out[i] = eval(rule.nodes[i]);
    return out;
}

}  // namespace

Vec SlabContext::trial_value(const SlabState& s, const std::vector<double>& w) const {
    Vec out = w[0] * s.u0;
    for (size_t m = 0; m < s.trial.size(); ++m) out += w[m + 1] * s.trial[m];
    return out;
}

Vec SlabContext::trial_derivative(const SlabState& s, const std::vector<double>& w) const {
    Vec out = w[0] * s.u0;
    for (size_t m = 0; m < s.trial.size(); ++m) out += w[m + 1] * s.trial[m];
    return out / dt;
}

AuxSample SlabContext::aux_value(const SlabState& s, const std::vector<double>& w) const {
    AuxSample out(s.aux.size());
    for (size_t p = 0; p < s.aux.size(); ++p) {
        Vec v = Vec::Zero(s.aux[p].empty() ? 0 : s.aux[p][0].size());
        for (size_t j = 0; j < s.aux[p].size(); ++j) v += w[j] * s.aux[p][j];
        out[p] = std::move(v);
    }
    return out;
}

SlabContext make_slab_context(const ProblemDef& problem, const TemporalBasis& basis,
                              const QuadratureRule& quad_main,
                              const QuadratureRule& quad_exact, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("make_slab_context: dt must be positive");
    SlabContext ctx;
    ctx.problem = &problem;
    ctx.basis = &basis;
    ctx.quad_main = quad_main;
    ctx.quad_exact = quad_exact;
    ctx.dt = dt;
    ctx.trial_at_main = tabulate(quad_main, [&](double t) { return basis.trial_values(t); });
    ctx.trial_deriv_at_main =
        tabulate(quad_main, [&](double t) { return basis.trial_derivatives(t); });
    ctx.test_at_main = tabulate(quad_main, [&](double t) { return basis.test_values(t); });
    ctx.trial_at_exact = tabulate(quad_exact, [&](double t) { return basis.trial_values(t); });
    ctx.test_at_exact = tabulate(quad_exact, [&](double t) { return basis.test_values(t); });
    return ctx;
}

Vec flatten_slab(const SlabContext& ctx, const SlabState& state) {
    const ProblemDef& prob = *ctx.problem;
    const int s = ctx.basis->degree();
    int n = s * prob.dof;
    for (int p = 0; p < prob.n_aux(); ++p) n += s * prob.aux_dims[p];
    Vec x(n);
    int at = 0;
    for (int m = 0; m < s; ++m) {
        x.segment(at, prob.dof) = state.trial[m];
        at += prob.dof;
    }
    for (int p = 0; p < prob.n_aux(); ++p)
        for (int j = 0; j < s; ++j) {
            x.segment(at, prob.aux_dims[p]) = state.aux[p][j];
            at += prob.aux_dims[p];
        }
    return x;
}

SlabState unflatten_slab(const SlabContext& ctx, const Vec& x, const Vec& u0) {
    const ProblemDef& prob = *ctx.problem;
    const int s = ctx.basis->degree();
    SlabState state;
    state.u0 = u0;
    state.trial.resize(s);
    int at = 0;
    for (int m = 0; m < s; ++m) {
        state.trial[m] = x.segment(at, prob.dof);
        at += prob.dof;
    }
    state.aux.resize(prob.n_aux());
    for (int p = 0; p < prob.n_aux(); ++p) {
        state.aux[p].resize(s);
        for (int j = 0; j < s; ++j) {
            state.aux[p][j] = x.segment(at, prob.aux_dims[p]);
            at += prob.aux_dims[p];
        }
    }
    return state;
}

Vec assemble_residual(const SlabContext& ctx, const SlabState& state) {
    const ProblemDef& prob = *ctx.problem;
    const int s = ctx.basis->degree();
    const int n_aux = prob.n_aux();

    std::vector<Vec> weak(s, Vec::Zero(prob.dof));
    std::vector<std::vector<Vec>> auxres(n_aux);
    for (int p = 0; p < n_aux; ++p)
        auxres[p].assign(s, Vec::Zero(prob.aux_dims[p]));

    // Slab-rule terms: the weak equation and the auxiliary left-hand sides.
    for (int i = 0; i < ctx.quad_main.size(); ++i) {
        const double wq = ctx.dt * ctx.quad_main.weights[i];
        const Vec u = ctx.trial_value(state, ctx.trial_at_main[i]);
        const Vec udot = ctx.trial_derivative(state, ctx.trial_deriv_at_main[i]);
        const AuxSample aux = ctx.aux_value(state, ctx.test_at_main[i]);

        const Vec core = prob.m_apply(u, udot) - prob.ftilde_apply(u, aux);
        for (int j = 0; j < s; ++j) weak[j] += wq * ctx.test_at_main[i][j] * core;

        for (int p = 0; p < n_aux; ++p) {
            const Vec lhs = prob.aux_m_apply(p, u, aux[p]);
            for (int j = 0; j < s; ++j) auxres[p][j] += wq * ctx.test_at_main[i][j] * lhs;
        }
    }

    // Near-exact right-hand sides of the auxiliary definitions.
    for (int k = 0; k < ctx.quad_exact.size(); ++k) {
        const double wq = ctx.dt * ctx.quad_exact.weights[k];
        const Vec u = ctx.trial_value(state, ctx.trial_at_exact[k]);
        for (int p = 0; p < n_aux; ++p) {
            const Vec rhs = prob.aux_rhs_apply(p, u);
            for (int j = 0; j < s; ++j) auxres[p][j] -= wq * ctx.test_at_exact[k][j] * rhs;
        }
    }

    int n = s * prob.dof;
    for (int p = 0; p < n_aux; ++p) n += s * prob.aux_dims[p];
    Vec r(n);
    int at = 0;
    for (int j = 0; j < s; ++j) {
        r.segment(at, prob.dof) = weak[j];
        at += prob.dof;
    }
    for (int p = 0; p < n_aux; ++p)
        for (int j = 0; j < s; ++j) {
            r.segment(at, prob.aux_dims[p]) = auxres[p][j];
            at += prob.aux_dims[p];
        }
    return r;
}

void check_update_identity(const SlabContext& ctx, const SlabState& state,
                           StepDiagnostics& diag) {
    const ProblemDef& prob = *ctx.problem;
    const int nq = prob.n_quantities;
    diag.predicted_delta.assign(nq, std::numeric_limits<double>::quiet_NaN());
    diag.identity_gap.assign(nq, std::numeric_limits<double>::quiet_NaN());

    std::vector<double> predicted(nq, 0.0);
    std::vector<bool> tracked(nq, false);
    for (int q = 0; q < nq; ++q) {
        // Probe availability at the first node; an empty field means the
        // identity is not defined for this quantity (no auxiliary for it).
        const Vec u0s = ctx.trial_value(state, ctx.trial_at_main[0]);
        const AuxSample aux0 = ctx.aux_value(state, ctx.test_at_main[0]);
        tracked[q] = prob.q_test_field && prob.q_test_field(q, u0s, aux0).size() > 0;
    }

    for (int i = 0; i < ctx.quad_main.size(); ++i) {
        const double wq = ctx.dt * ctx.quad_main.weights[i];
        const Vec u = ctx.trial_value(state, ctx.trial_at_main[i]);
        const AuxSample aux = ctx.aux_value(state, ctx.test_at_main[i]);
        const Vec f = prob.ftilde_apply(u, aux);
        for (int q = 0; q < nq; ++q) {
            if (!tracked[q]) continue;
            predicted[q] += wq * f.dot(prob.q_test_field(q, u, aux));
        }
    }

    for (int q = 0; q < nq; ++q) {
        if (!tracked[q]) continue;
        diag.predicted_delta[q] = predicted[q];
        diag.identity_gap[q] =
            std::abs(diag.q_after[q] - diag.q_before[q] - predicted[q]);
    }
}

AdvanceOptions default_advance_options(int degree) {
    AdvanceOptions opts;
    opts.quad_main = gauss_rule(degree);
    opts.quad_exact = gauss_rule(4 * degree + 4);
    return opts;
}

namespace {

SlabState initial_guess(const SlabContext& ctx, const Vec& u_n) {
    const ProblemDef& prob = *ctx.problem;
    const int s = ctx.basis->degree();
    SlabState state;
    state.u0 = u_n;
    state.trial.assign(s, u_n);
    state.aux.resize(prob.n_aux());
    for (int p = 0; p < prob.n_aux(); ++p) {
        const Vec w = prob.aux_guess ? prob.aux_guess(p, u_n)
                                     : Vec::Zero(prob.aux_dims[p]);
        state.aux[p].assign(s, w);
    }
    return state;
}

// Positivity guard over every temporal sample the residual touches.
bool slab_admissible(const SlabContext& ctx, const SlabState& state) {
    const ProblemDef& prob = *ctx.problem;
    if (prob.state_ok) {
        for (const auto& tab : ctx.trial_at_main)
            if (!prob.state_ok(ctx.trial_value(state, tab))) return false;
        for (const auto& tab : ctx.trial_at_exact)
            if (!prob.state_ok(ctx.trial_value(state, tab))) return false;
    }
    if (prob.aux_ok) {
        for (const auto& tab : ctx.test_at_main) {
            const AuxSample aux = ctx.aux_value(state, tab);
            for (int p = 0; p < prob.n_aux(); ++p)
                if (!prob.aux_ok(p, aux[p])) return false;
        }
    }
    return true;
}

}  // namespace

StepResult advance(const ProblemDef& problem, const Vec& u_n, double dt,
                   const TemporalBasis& basis, const AdvanceOptions& opts) {
    if (!u_n.allFinite()) throw std::invalid_argument("advance: non-finite state");
    const SlabContext ctx =
        make_slab_context(problem, basis, opts.quad_main, opts.quad_exact, dt);

    StepResult result;
    SlabState state = initial_guess(ctx, u_n);

    if (problem.custom_slab_solve) {
        result.diag.solve = problem.custom_slab_solve(ctx, state);
    } else {
        SolverConfig cfg = opts.solver;
        cfg.iterate_ok = [&](const Vec& x) {
            return slab_admissible(ctx, unflatten_slab(ctx, x, u_n));
        };
        auto residual = [&](const Vec& x) {
            return assemble_residual(ctx, unflatten_slab(ctx, x, u_n));
        };
        auto [x, report] = newton_solve(residual, flatten_slab(ctx, state), cfg);
        state = unflatten_slab(ctx, x, u_n);
        result.diag.solve = report;
    }

    if (!result.diag.solve.converged) return result;

    result.diag.slab_residual_norm = assemble_residual(ctx, state).cwiseAbs().maxCoeff();

    std::vector<Vec> all_coeffs;
    all_coeffs.push_back(state.u0);
    for (const Vec& c : state.trial) all_coeffs.push_back(c);
    result.u_next = eval_trial(basis, all_coeffs, 1.0);

    result.diag.q_before = problem.q_values(u_n);
    result.diag.q_after = problem.q_values(result.u_next);
    check_update_identity(ctx, state, result.diag);

    result.slab = std::move(state);
    result.ok = true;
    return result;
}

TransientSummary run_transient(const ProblemDef& problem, const Vec& u0, double dt,
                               int n_steps, const TemporalBasis& basis,
                               const AdvanceOptions& opts, const DiagnosticsSink& sink) {
    TransientSummary summary;
    summary.q_initial = problem.q_values(u0);
    Vec u = u0;
    for (int step = 1; step <= n_steps; ++step) {
        StepResult res = advance(problem, u, dt, basis, opts);
        if (!res.ok) {
            summary.failed = true;
            summary.failed_at_step = step;
            summary.failure_reason = res.diag.solve.failure_text();
            return summary;
        }
        res.diag.step = step;
        res.diag.t_end = step * dt;
        if (sink) sink(res.diag);
        u = res.u_next;
        summary.completed_steps = step;
    }
    return summary;
}

}  // namespace avcpg
