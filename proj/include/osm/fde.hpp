#pragma once

#include <functional>
#include <string>

#include "osm/operators.hpp"

namespace osm {

/// Cauchy problem D^alpha u = f(t,u), I^{1-alpha} u(0) = 0 on (0,delta).
struct CauchyProblem {
    FractionalOrder alpha;
    std::function<double(double, double)> rhs;
    std::string rhs_id = "custom";
    double delta = 1.0;
    double lipschitz = 0.0;
    int n = 2048;

    CauchyProblem(FractionalOrder a, std::function<double(double, double)> f)
        : alpha(a), rhs(std::move(f)) {}
};

/// Registry right-hand sides. linear-manufactured{mu,c}: built so u*(t) = t^mu
/// is the fixed point with Lipschitz constant c; power-law{lambda,gamma}:
/// f(t,u) = lambda t^gamma u^2.
std::function<double(double, double)> make_rhs(const std::string& id, double a, double b,
                                               double alpha);

struct PicardResult {
    SampledFunction u;
    int iterations = 0;
    double final_update_norm = 0.0;
    bool converged = false;
    double residual_sup = 0.0; // interior |D^alpha u - f(t,u)|
    double delta_used = 0.0;
    int halvings = 0;
};

/// Successive substitution on u = Gamma(alpha)^{-1} int_0^t f(tau,u)(t-tau)^{alpha-1};
/// divergence (update norm growing 3 consecutive iterations) triggers up to 6
/// horizon halvings before reporting failure.
PicardResult picard_solve(const CauchyProblem& problem, double tol = 1e-10, int max_iter = 50,
                          Exec exec = Exec::par);

/// The horizon bounds from the contraction argument, both variants:
///   delta = [Gamma(alpha) r^{1/p'} / (C * C_F)]^{1/e},
///   e = (alpha p - 1)/p + (1 - mu)/q,
/// with r = (alpha p - 1)/(p - 1) for the existence bound and
/// r = (alpha q - 1)/(q - 1) for the uniqueness bound.
struct DeltaBounds {
    double existence = 0.0;
    double uniqueness = 0.0;
};
DeltaBounds contraction_delta(double alpha, double p, double q, double mu, double C, double C_F);

/// Closed form for D^alpha u = lambda t^gamma u^2:
/// u(t) = coefficient * t^exponent with
/// coefficient = Gamma(1-alpha-gamma)/(lambda Gamma(1-2 alpha-gamma)),
/// exponent = -(alpha+gamma).
struct PowerSolution {
    double coefficient = 0.0;
    double exponent = 0.0;
};
PowerSolution exact_power_solution(double alpha, double gamma_exp, double lambda_coef);

struct ResidualReport {
    double max_relative_residual = 0.0;
    int n = 0;
    double interior_cut = 0.0;
};

/// Samples the closed-form solution (exact first-cell mass at the singular
/// end, pointwise elsewhere), applies D^alpha and reports the max relative
/// deviation from lambda t^gamma u^2 on [interior_cut*delta, delta].
ResidualReport verify_exact_solution(double alpha, double gamma_exp, double lambda_coef, int n,
                                     double delta, double interior_cut, Exec exec = Exec::par);

/// Sampling helper for closed-form power profiles coef * t^e on (0, delta]:
/// node 0 is chosen so the first-cell trapezoid carries the exact cell mass
/// (a piecewise-linear interpolant through pointwise samples loses nearly the
/// whole first-cell mass when e is close to -1).
SampledFunction sample_power_profile(double coef, double e, int n, double delta);

} // namespace osm
