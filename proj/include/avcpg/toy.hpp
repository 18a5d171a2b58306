#pragma once

#include "avcpg/framework.hpp"

namespace avcpg {

/// Planar harmonic oscillator udot = J u with J the rotation generator,
/// tracked quantity Q1 = |u|^2 / 2. The modified right-hand side uses the
/// auxiliary velocity, so the skew pairing vanishes identically and Q1 is
/// conserved every step.
ProblemDef make_oscillator_problem();

/// Scalar decay udot = -u with Q1 = u^2 / 2, non-increasing.
ProblemDef make_decay_problem();

/// Scalar cubic growth udot = u^3 with no auxiliaries; genuinely nonlinear,
/// used to exercise solver-failure paths.
ProblemDef make_cubic_problem();

/// Exact oscillator solution: rotation of u0 by angle t.
Vec oscillator_exact(const Vec& u0, double t);

}  // namespace avcpg
