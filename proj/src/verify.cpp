#include "osm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace osm {

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

} // namespace

SpacePair::SpacePair(TheoremTag tag_, double alpha_, double p_, double q_, double beta_,
                     double target_exponent)
    : tag(tag_), alpha(alpha_), p(p_), q(q_), beta(beta_) {
    sigma = 1.0 / p - 1.0 / q;
    switch (tag) {
        case TheoremTag::weak11:
            lambda = target_exponent;
            if (!close(p, 1.0) || !close(q, 1.0)) {
                throw parameter_error("SpacePair(weak11): hypothesis p = q = 1 violated");
            }
            if (!(lambda >= 0.0 && lambda < 1.0)) {
                throw parameter_error("SpacePair(weak11): hypothesis 0 <= lambda < 1 violated");
            }
            beta = lambda;
            break;
        case TheoremTag::strong_frac:
            lambda = target_exponent;
            if (!(alpha > 0.0 && alpha < 1.0)) {
                throw parameter_error("SpacePair(strong_frac): hypothesis 0 < alpha < 1 violated");
            }
            if (!(beta >= 0.0 && beta < 1.0 && lambda >= 0.0 && lambda < 1.0)) {
                throw parameter_error(
                    "SpacePair(strong_frac): hypothesis 0 <= beta, lambda < 1 violated");
            }
            if (!(p >= 1.0 && q >= 1.0)) {
                throw parameter_error("SpacePair(strong_frac): hypothesis 1 <= p, q violated");
            }
            if (std::abs(beta / p - lambda / q) > 1e-9) {
                throw parameter_error("SpacePair(strong_frac): hypothesis beta/p = lambda/q violated");
            }
            if (std::abs(1.0 / p - 1.0 / q - alpha) > 1e-9) {
                throw parameter_error("SpacePair(strong_frac): hypothesis 1/p = 1/q + alpha violated");
            }
            if (!(alpha - 1.0 / q + (beta - 1.0) / p + 1.0 < 0.0)) {
                throw parameter_error(
                    "SpacePair(strong_frac): hypothesis alpha - 1/q + (beta-1)/p + 1 < 0 violated");
            }
            break;
        case TheoremTag::rl_bound:
            mu = target_exponent;
            if (!(p > 1.0 && q > 1.0)) {
                throw parameter_error("SpacePair(rl_bound): hypothesis 1 < p, q violated");
            }
            if (!(sigma > 0.0 && sigma < 1.0)) {
                throw parameter_error(
                    "SpacePair(rl_bound): hypothesis 0 < sigma = 1/p - 1/q < 1 violated");
            }
            if (!(alpha > 1.0 / p && alpha < 1.0)) {
                throw parameter_error("SpacePair(rl_bound): hypothesis 1/p < alpha < 1 violated");
            }
            if (!(beta >= 0.0 && beta < 1.0 && mu >= 0.0 && mu < 1.0)) {
                throw parameter_error("SpacePair(rl_bound): hypothesis 0 <= beta, mu < 1 violated");
            }
            if (!(q + mu <= 2.0)) {
                throw parameter_error("SpacePair(rl_bound): hypothesis q + mu <= 2 violated");
            }
            break;
    }
}

MorreyParams SpacePair::source_params(std::optional<double> T) const {
    switch (tag) {
        case TheoremTag::weak11: return MorreyParams(1.0, lambda, 1.0, Side::plus, T);
        case TheoremTag::strong_frac:
            return MorreyParams(p, beta, std::max(p, 1.0), Side::plus, T);
        case TheoremTag::rl_bound: return MorreyParams(p, beta, p, Side::plus, T);
    }
    throw parameter_error("SpacePair: bad tag");
}

MorreyParams SpacePair::target_params(std::optional<double> T) const {
    switch (tag) {
        case TheoremTag::weak11: return MorreyParams(1.0, lambda, 1.0, Side::plus, T);
        case TheoremTag::strong_frac: return MorreyParams(q, lambda, q, Side::plus, T);
        case TheoremTag::rl_bound: return MorreyParams(q, mu, q, Side::plus, T);
    }
    throw parameter_error("SpacePair: bad tag");
}

bool SpacePair::weak_target() const {
    return tag == TheoremTag::weak11 || (tag == TheoremTag::strong_frac && close(p, 1.0));
}

OperatorId parse_operator(const std::string& name) {
    if (name == "maximal+") return OperatorId::maximal_plus;
    if (name == "weyl+") return OperatorId::weyl_plus;
    if (name == "rl-int") return OperatorId::rl_int;
    if (name == "singular") return OperatorId::singular_paper;
    throw parameter_error("unknown operator '" + name + "'");
}

std::string operator_name(OperatorId id) {
    switch (id) {
        case OperatorId::maximal_plus: return "maximal+";
        case OperatorId::weyl_plus: return "weyl+";
        case OperatorId::rl_int: return "rl-int";
        case OperatorId::singular_paper: return "singular";
    }
    return "?";
}

std::vector<std::string> registry_ids() {
    return {"zero", "one", "t", "t2", "step", "bump", "bump-left", "bump-right"};
}

SampledFunction make_registry_function(const std::string& id, const Grid1D& grid) {
    double L = grid.interval.left;
    double len = grid.interval.length();
    auto bump_at = [&](double center, double halfwidth) {
        return [=](double x) {
            double z = (x - center) / halfwidth;
            if (std::abs(z) >= 1.0) return 0.0;
            return std::exp(-1.0 / (1.0 - z * z));
        };
    };
    if (id == "zero") return SampledFunction::sample(grid, [](double) { return 0.0; });
    if (id == "one") return SampledFunction::sample(grid, [](double) { return 1.0; });
    if (id == "t") return SampledFunction::sample(grid, [&](double x) { return x - L; });
    if (id == "t2") {
        return SampledFunction::sample(grid, [&](double x) { return (x - L) * (x - L); });
    }
    if (id == "step") {
        double a = L + 0.25 * len;
        double b = L + 0.75 * len;
        return SampledFunction::sample(
            grid, [=](double x) { return (x >= a && x <= b) ? 1.0 : 0.0; });
    }
    if (id == "bump") return SampledFunction::sample(grid, bump_at(L + 0.5 * len, 0.45 * len));
    if (id == "bump-left") {
        return SampledFunction::sample(grid, bump_at(L + len / 3.0, 0.25 * len));
    }
    if (id == "bump-right") {
        return SampledFunction::sample(grid, bump_at(L + 2.0 * len / 3.0, 0.25 * len));
    }
    throw parameter_error("unknown registry function '" + id + "'");
}

namespace {

SampledFunction apply_operator(OperatorId op, const SampledFunction& f, const SpacePair& pair,
                               Exec exec) {
    switch (op) {
        case OperatorId::maximal_plus:
            return maximal_function(f, Side::plus, pair.tag == TheoremTag::weak11 ? 0.0 : pair.alpha,
                                    exec);
        case OperatorId::weyl_plus:
            return weyl_function(f, FractionalOrder(pair.alpha), Side::plus, exec);
        case OperatorId::rl_int: return rl_integral(f, FractionalOrder(pair.alpha), exec);
        case OperatorId::singular_paper: {
            KernelSpec K = KernelSpec::paper_example();
            const Grid1D& g = f.grid();
            double S = g.interval.length();
            Grid1D out(Interval(g.interval.left - S, g.interval.right + S), 3 * g.n);
            double eps = 2.0 * g.step;
            std::vector<double> vals(out.n + 1, 0.0);
            detail::for_index(exec, out.n + 1, [&](std::int64_t k) {
                vals[k] = one_sided_singular(f, K, out.node(static_cast<int>(k)), eps);
            });
            return SampledFunction(out, std::move(vals));
        }
    }
    throw parameter_error("apply_operator: bad operator");
}

bool local_domain(OperatorId op) { return op == OperatorId::rl_int; }

} // namespace

RatioReport boundedness_experiment(OperatorId op, const SpacePair& pair,
                                   const std::vector<std::string>& family, const WeightSpec& w,
                                   const ExperimentOptions& opts) {
    if (family.empty()) throw parameter_error("boundedness_experiment: empty family");
    std::optional<double> T = local_domain(op) ? std::optional<double>(opts.T) : std::nullopt;
    SweepOptions sw;
    sw.levels = opts.sweep_levels;
    sw.exec = opts.exec;
    RatioReport rep;
    Grid1D grid(Interval(0.0, opts.T), opts.n);
    for (const std::string& id : family) {
        SampledFunction f = make_registry_function(id, grid);
        double src = morrey_norm(f, w, pair.source_params(T), sw).value;
        SampledFunction g = apply_operator(op, f, pair, opts.exec);
        double tgt = pair.weak_target() ? weak_morrey_norm(g, w, pair.target_params(T), sw).value
                                        : morrey_norm(g, w, pair.target_params(T), sw).value;
        RatioRow row{id, opts.T, src, tgt, 0.0, false};
        if (src == 0.0 && tgt == 0.0) {
            row.skipped = true;
        } else {
            row.ratio = tgt / src;
            rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw parameter_error("fit_loglog_slope: need at least two points");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw parameter_error("fit_loglog_slope: degenerate abscissas");
    return sxy / sxx;
}

RatioReport scaling_experiment(OperatorId op, const SpacePair& pair, const std::string& f_template,
                               const std::vector<double>& T_values, const WeightSpec& w,
                               const ExperimentOptions& opts) {
    if (T_values.size() < 4) {
        throw parameter_error("scaling_experiment: need at least 4 values of T");
    }
    std::set<double> distinct(T_values.begin(), T_values.end());
    if (distinct.size() < 2) {
        throw parameter_error("scaling_experiment: degenerate fit (all T equal)");
    }
    RatioReport rep;
    std::vector<double> lx, ly;
    for (double T : T_values) {
        if (!(T > 0.0)) throw parameter_error("scaling_experiment: T must be positive");
        ExperimentOptions row_opts = opts;
        row_opts.T = T;
        RatioReport one = boundedness_experiment(op, pair, {f_template}, w, row_opts);
        RatioRow row = one.rows.at(0);
        rep.rows.push_back(row);
        if (!row.skipped && row.ratio > 0.0) {
            lx.push_back(std::log(T));
            ly.push_back(std::log(row.ratio));
        }
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    }
    rep.fitted_slope = fit_loglog_slope(lx, ly);
    return rep;
}

namespace {

SampledFunction shifted_difference(const SampledFunction& f, int m) {
    const Grid1D& g = f.grid();
    std::vector<double> d(g.n + 1, 0.0);
    for (int i = 0; i <= g.n; ++i) {
        double ahead = (i + m <= g.n) ? f.values()[i + m] : 0.0;
        d[i] = ahead - f.values()[i];
    }
    return SampledFunction(g, std::move(d));
}

SampledFunction tail_mask(const SampledFunction& f, double R) {
    const Grid1D& g = f.grid();
    std::vector<double> v(g.n + 1, 0.0);
    for (int i = 0; i <= g.n; ++i) {
        if (g.node(i) > R) v[i] = f.values()[i];
    }
    return SampledFunction(g, std::move(v));
}

} // namespace

CompactnessReport compactness_diagnostics(const std::vector<SampledFunction>& G,
                                          const MorreyParams& params, const WeightSpec& w,
                                          const std::vector<double>& shift_set,
                                          const std::vector<double>& R_set,
                                          const ExperimentOptions& opts) {
    if (G.empty()) throw parameter_error("compactness_diagnostics: empty family");
    for (const SampledFunction& f : G) {
        if (!f.grid().same_as(G.front().grid())) {
            throw data_error("compactness_diagnostics: members on mismatched grids");
        }
    }
    SweepOptions sw;
    sw.levels = opts.sweep_levels;
    sw.exec = opts.exec;
    CompactnessReport rep;
    for (const SampledFunction& f : G) {
        rep.uniform_bound = std::max(rep.uniform_bound, morrey_norm(f, w, params, sw).value);
    }
    double step = G.front().grid().step;
    for (double l : shift_set) {
        int m = std::max(1, static_cast<int>(std::llround(l / step)));
        double worst = 0.0;
        for (const SampledFunction& f : G) {
            worst = std::max(worst, morrey_norm(shifted_difference(f, m), w, params, sw).value);
        }
        rep.equicontinuity_curve.emplace_back(m * step, worst);
    }
    for (double R : R_set) {
        double worst = 0.0;
        for (const SampledFunction& f : G) {
            worst = std::max(worst, morrey_norm(tail_mask(f, R), w, params, sw).value);
        }
        rep.tail_curve.emplace_back(R, worst);
    }
    return rep;
}

double equicontinuity_exponent(double alpha, double p, double q, double mu, const WeightSpec& w,
                               double ball_radius, const std::vector<double>& shift_set,
                               const ExperimentOptions& opts) {
    if (!(alpha > 0.5 * (1.0 + 1.0 / p) && alpha < 1.0)) {
        throw parameter_error(
            "equicontinuity_exponent: window (1 + 1/p)/2 < alpha < 1 violated");
    }
    if (shift_set.size() < 2) {
        throw parameter_error("equicontinuity_exponent: need at least two shifts");
    }
    Grid1D grid(Interval(0.0, opts.T), opts.n);
    MorreyParams source(p, 0.0, p, Side::plus, opts.T);
    MorreyParams target(q, mu, q, Side::plus, opts.T);
    SweepOptions sw;
    sw.levels = opts.sweep_levels;
    sw.exec = opts.exec;
    std::vector<SampledFunction> images;
    for (const std::string& id : {"t", "step", "bump"}) {
        SampledFunction f = make_registry_function(id, grid);
        double nrm = morrey_norm(f, w, source, sw).value;
        if (!(nrm > 0.0)) continue;
        double scale = ball_radius / nrm;
        std::vector<double> v = f.values();
        for (double& x : v) x *= scale;
        images.push_back(
            rl_integral(SampledFunction(grid, std::move(v)), FractionalOrder(alpha), opts.exec));
    }
    std::vector<double> lx, ly;
    for (double y : shift_set) {
        int m = std::max(1, static_cast<int>(std::llround(y / grid.step)));
        double worst = 0.0;
        for (const SampledFunction& Tu : images) {
            worst = std::max(worst, morrey_norm(shifted_difference(Tu, m), w, target, sw).value);
        }
        if (worst > 0.0) {
            lx.push_back(std::log(m * grid.step));
            ly.push_back(std::log(worst));
        }
    }
    return fit_loglog_slope(lx, ly);
}

const char* verdict_name(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::converging: return "converging";
        case ProbeVerdict::diverging: return "diverging";
        case ProbeVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

ProbeReport morrey_membership_probe(double coef, double exponent, const MorreyParams& params,
                                    const WeightSpec& w, int refinement_levels,
                                    const ExperimentOptions& opts) {
    if (refinement_levels < 3) {
        throw parameter_error("morrey_membership_probe: need >= 3 refinement levels");
    }
    SweepOptions sw;
    sw.levels = opts.sweep_levels;
    sw.exec = opts.exec;
    ProbeReport rep;
    for (int L = 0; L <= refinement_levels; ++L) {
        int n = opts.n << L;
        Grid1D grid(Interval(0.0, opts.T), n);
        std::vector<double> v(n + 1);
        for (int i = 1; i <= n; ++i) {
            v[i] = coef * std::pow(grid.node(i), exponent);
        }
        v[0] = coef * std::pow(0.5 * grid.step, exponent); // half-step offset from the singularity
        SampledFunction f(grid, std::move(v));
        rep.norm_sequence.push_back(morrey_norm(f, w, params, sw).value);
    }
    bool cauchy = true, growing = true;
    for (std::size_t i = 1; i < rep.norm_sequence.size(); ++i) {
        double prev = rep.norm_sequence[i - 1];
        double cur = rep.norm_sequence[i];
        if (!(std::abs(cur - prev) <= 0.10 * std::max(prev, 1e-300))) cauchy = false;
        if (!(cur >= 1.20 * prev)) growing = false;
    }
    rep.verdict = cauchy ? ProbeVerdict::converging
                         : (growing ? ProbeVerdict::diverging : ProbeVerdict::inconclusive);
    return rep;
}

} // namespace osm
