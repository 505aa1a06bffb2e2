#pragma once

#include "osm/operators.hpp"

namespace osm {

/// Abel equation I^alpha phi = f on (0,T) with solvability diagnostics.
struct AbelProblem {
    SampledFunction f;
    FractionalOrder alpha;
    double ac_tolerance = 0.05;   // allowed relative TV growth per refinement
    double zero_tolerance = 1e-3; // |f_{1-alpha}| at the first interior node
    double lambda = 0.25;         // Morrey parameter for the derivative check
    WeightSpec weight = WeightSpec::constant(1.0);

    AbelProblem(SampledFunction f_, FractionalOrder a) : f(std::move(f_)), alpha(a) {
        if (!(ac_tolerance > 0.0) || !(zero_tolerance > 0.0)) {
            throw parameter_error("AbelProblem: tolerances must be positive");
        }
    }
};

/// The three solvability checks (endpoint value, AC proxy, derivative-norm
/// stability), each evaluated at two nested resolutions. The AC check is a
/// discrete proxy: finite, refinement-stable total variation plus endpoint
/// zero stands in for absolute continuity.
struct SolvabilityReport {
    bool solvable = false;
    bool endpoint_zero = false;
    bool ac_proxy = false;
    bool derivative_norm_stable = false;
    double endpoint_value_coarse = 0.0;
    double endpoint_value_fine = 0.0;
    double tv_coarse = 0.0;
    double tv_fine = 0.0;
    double deriv_norm_coarse = 0.0;
    double deriv_norm_fine = 0.0;
};

struct AbelSolution {
    SampledFunction phi;
    SampledFunction f_transform;
    double residual_sup = 0.0; // interior max of |I^alpha phi - f|
    bool solvable = false;
};

/// f_{1-alpha} = I^{1-alpha} f.
SampledFunction f_transform(const SampledFunction& f, FractionalOrder alpha,
                            Exec exec = Exec::par);

SolvabilityReport check_solvability(const AbelProblem& problem, Exec exec = Exec::par);

/// phi = D^alpha f with the round-trip residual; rejects unsolvable problems
/// unless force is set.
AbelSolution solve_abel(const AbelProblem& problem, bool force = false, Exec exec = Exec::par);

} // namespace osm
