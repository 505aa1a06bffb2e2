#include "osm/fde.hpp"

#include <cmath>

namespace osm {

std::function<double(double, double)> make_rhs(const std::string& id, double a, double b,
                                               double alpha) {
    if (id == "zero") {
        return [](double, double) { return 0.0; };
    }
    if (id == "constant") {
        return [a](double, double) { return a; };
    }
    if (id == "linear-manufactured") {
        // a = mu, b = Lipschitz constant; fixed point u*(t) = t^mu
        double mu = a;
        double c = b;
        double coef = std::tgamma(mu + 1.0) / std::tgamma(mu + 1.0 - alpha);
        return [mu, c, coef, alpha](double t, double u) {
            double dalpha = t > 0.0 ? coef * std::pow(t, mu - alpha) : 0.0;
            return dalpha + c * (u - (t > 0.0 ? std::pow(t, mu) : 0.0));
        };
    }
    if (id == "power-law") {
        // a = lambda coefficient, b = gamma exponent
        double lam = a;
        double g = b;
        return [lam, g](double t, double u) {
            return t > 0.0 ? lam * std::pow(t, g) * u * u : 0.0;
        };
    }
    throw parameter_error("make_rhs: unknown rhs id '" + id + "'");
}

namespace {

PicardResult picard_once(const CauchyProblem& problem, double delta, double tol, int max_iter,
                         Exec exec) {
    Grid1D grid(Interval(0.0, delta), problem.n);
    std::vector<double> zero(grid.n + 1, 0.0);
    SampledFunction u(grid, zero);
    PicardResult res{u, 0, 0.0, false, 0.0, delta, 0};
    int growth_streak = 0;
    double prev_update = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> w(grid.n + 1);
        for (int i = 0; i <= grid.n; ++i) {
            w[i] = problem.rhs(grid.node(i), res.u.values()[i]);
        }
        SampledFunction rhs_sampled(grid, std::move(w));
        SampledFunction next = rl_integral(rhs_sampled, problem.alpha, exec);
        double update = 0.0;
        for (int i = 0; i <= grid.n; ++i) {
            update = std::max(update, std::abs(next.values()[i] - res.u.values()[i]));
        }
        res.u = std::move(next);
        res.iterations = it;
        res.final_update_norm = update;
        if (update < tol) {
            res.converged = true;
            break;
        }
        if (update > prev_update) {
            if (++growth_streak >= 3) break;
        } else {
            growth_streak = 0;
        }
        prev_update = update;
    }
    if (res.converged) {
        SampledFunction d = rl_derivative(res.u, problem.alpha, exec);
        int lo = grid.n / 8;
        for (int i = lo; i <= grid.n; ++i) {
            double target = problem.rhs(grid.node(i), res.u.values()[i]);
            res.residual_sup = std::max(res.residual_sup, std::abs(d.values()[i] - target));
        }
    }
    return res;
}

} // namespace

PicardResult picard_solve(const CauchyProblem& problem, double tol, int max_iter, Exec exec) {
    if (!(problem.delta > 0.0)) throw parameter_error("picard_solve: require delta > 0");
    double delta = problem.delta;
    for (int halving = 0; halving <= 6; ++halving) {
        PicardResult res = picard_once(problem, delta, tol, max_iter, exec);
        res.halvings = halving;
        if (res.converged || halving == 6) return res;
        delta /= 2.0;
    }
    throw parameter_error("picard_solve: unreachable");
}

DeltaBounds contraction_delta(double alpha, double p, double q, double mu, double C, double C_F) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("contraction_delta: alpha in (0,1)");
    if (!(p > 1.0) || !(q > 1.0)) throw parameter_error("contraction_delta: require p, q > 1");
    if (!(alpha * p > 1.0)) {
        throw parameter_error("contraction_delta: require alpha*p > 1");
    }
    if (!(C > 0.0) || !(C_F > 0.0)) {
        throw parameter_error("contraction_delta: require positive constants");
    }
    double e = (alpha * p - 1.0) / p + (1.0 - mu) / q;
    if (!(e > 0.0)) throw parameter_error("contraction_delta: nonpositive exponent");
    double pprime = p / (p - 1.0);
    double ga = std::tgamma(alpha);
    auto bound = [&](double ratio) {
        return std::pow(ga * std::pow(ratio, 1.0 / pprime) / (C * C_F), 1.0 / e);
    };
    DeltaBounds b;
    b.existence = bound((alpha * p - 1.0) / (p - 1.0));
    b.uniqueness = bound((alpha * q - 1.0) / (q - 1.0));
    return b;
}

PowerSolution exact_power_solution(double alpha, double gamma_exp, double lambda_coef) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw parameter_error("exact_power_solution: alpha in (0,1)");
    }
    if (lambda_coef == 0.0) {
        throw parameter_error("exact_power_solution: lambda must be nonzero");
    }
    double s = alpha + gamma_exp;
    if (!(s > 0.0 && s < 1.0)) {
        throw parameter_error("exact_power_solution: require 0 < alpha + gamma < 1");
    }
    double pole_arg = 1.0 - 2.0 * alpha - gamma_exp;
    if (pole_arg <= 0.0 && std::abs(pole_arg - std::round(pole_arg)) < 1e-12) {
        throw parameter_error("exact_power_solution: Gamma pole at 1 - 2*alpha - gamma = " +
                              std::to_string(pole_arg));
    }
    PowerSolution sol;
    sol.coefficient = std::tgamma(1.0 - s) / (lambda_coef * std::tgamma(pole_arg));
    sol.exponent = -s;
    return sol;
}

SampledFunction sample_power_profile(double coef, double e, int n, double delta) {
    if (!(e > -1.0)) throw parameter_error("sample_power_profile: exponent must exceed -1");
    Grid1D grid(Interval(0.0, delta), n);
    std::vector<double> v(n + 1);
    for (int i = 1; i <= n; ++i) {
        v[i] = coef * std::pow(grid.node(i), e);
    }
    // first-cell trapezoid mass matches the exact integral over [0, step]
    double exact = coef * std::pow(grid.step, e + 1.0) / (e + 1.0);
    v[0] = 2.0 * exact / grid.step - v[1];
    return SampledFunction(grid, std::move(v));
}

ResidualReport verify_exact_solution(double alpha, double gamma_exp, double lambda_coef, int n,
                                     double delta, double interior_cut, Exec exec) {
    if (!(interior_cut > 0.0 && interior_cut < 1.0)) {
        throw parameter_error("verify_exact_solution: interior_cut in (0,1)");
    }
    PowerSolution sol = exact_power_solution(alpha, gamma_exp, lambda_coef);
    SampledFunction u = sample_power_profile(sol.coefficient, sol.exponent, n, delta);
    SampledFunction d = rl_derivative(u, FractionalOrder(alpha), exec);
    const Grid1D& g = u.grid();
    ResidualReport rep;
    rep.n = n;
    rep.interior_cut = interior_cut;
    int lo = static_cast<int>(std::ceil(interior_cut * n));
    for (int i = lo; i <= n; ++i) {
        double t = g.node(i);
        double ue = sol.coefficient * std::pow(t, sol.exponent);
        double target = lambda_coef * std::pow(t, gamma_exp) * ue * ue;
        double rel = std::abs(d.values()[i] - target) / std::abs(target);
        rep.max_relative_residual = std::max(rep.max_relative_residual, rel);
    }
    return rep;
}

} // namespace osm
