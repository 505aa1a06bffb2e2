#include "osm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace osm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow_antiderivative(double x, double e) {
    // F with F' = |x|^e, F(0) = 0 (e > -1)
    double s = x < 0 ? -1.0 : 1.0;
    return s * std::pow(std::abs(x), e + 1.0) / (e + 1.0);
}

} // namespace

WeightSpec WeightSpec::constant(double c) {
    if (!(c > 0.0)) throw parameter_error("WeightSpec: constant weight must be positive");
    WeightSpec w;
    w.kind_ = Kind::constant;
    w.c_ = c;
    return w;
}

WeightSpec WeightSpec::exponential() {
    WeightSpec w;
    w.kind_ = Kind::exponential;
    return w;
}

WeightSpec WeightSpec::power(double delta) {
    if (!(delta > -1.0)) throw parameter_error("WeightSpec: power exponent must exceed -1");
    WeightSpec w;
    w.kind_ = Kind::power;
    w.delta_ = delta;
    return w;
}

WeightSpec WeightSpec::sampled(SampledFunction table) {
    for (double v : table.values()) {
        if (!(v > 0.0)) throw data_error("WeightSpec: sampled weight must be strictly positive");
    }
    WeightSpec w;
    w.kind_ = Kind::sampled;
    w.table_ = std::make_shared<SampledFunction>(std::move(table));
    return w;
}

WeightSpec WeightSpec::parse(const std::string& spec) {
    if (spec == "exp") return exponential();
    if (spec.rfind("const:", 0) == 0) return constant(std::stod(spec.substr(6)));
    if (spec.rfind("pow:", 0) == 0) return power(std::stod(spec.substr(4)));
    if (spec.rfind("file:", 0) == 0) return sampled(load_csv(spec.substr(5)));
    throw parameter_error("WeightSpec: unknown weight '" + spec +
                          "' (expected const:<c>, exp, pow:<delta>, file:<path>)");
}

std::string WeightSpec::name() const {
    switch (kind_) {
        case Kind::constant: return "const:" + std::to_string(c_);
        case Kind::exponential: return outer_ == 1.0 ? "exp" : "exp^" + std::to_string(outer_);
        case Kind::power: return "pow:" + std::to_string(delta_ * outer_);
        case Kind::sampled: return "file";
    }
    return "?";
}

WeightSpec WeightSpec::powered(double s) const {
    WeightSpec w = *this;
    w.outer_ *= s;
    return w;
}

double WeightSpec::eval(double x) const {
    double base;
    switch (kind_) {
        case Kind::constant: base = c_; break;
        case Kind::exponential: base = std::exp(x); break;
        case Kind::power: base = std::pow(std::abs(x), delta_); break;
        case Kind::sampled: base = table_->value_at(x); break;
        default: base = 1.0; break;
    }
    return outer_ == 1.0 ? base : std::pow(base, outer_);
}

double WeightSpec::mass(double a, double b, double s) const {
    if (b <= a) return 0.0;
    double e = outer_ * s;
    switch (kind_) {
        case Kind::constant:
            return std::pow(c_, e) * (b - a);
        case Kind::exponential:
            if (e == 0.0) return b - a;
            return (std::exp(e * b) - std::exp(e * a)) / e;
        case Kind::power: {
            double de = delta_ * e;
            if (de <= -1.0 && a <= 0.0 && b >= 0.0) return kInf;
            if (de <= -1.0 && (a == 0.0 || b == 0.0)) return kInf;
            return pow_antiderivative(b, de) - pow_antiderivative(a, de);
        }
        case Kind::sampled: {
            const Interval& dom = table_->grid().interval;
            if (a < dom.left || b > dom.right) {
                throw data_error("WeightSpec: sampled weight does not cover [" +
                                 std::to_string(a) + ", " + std::to_string(b) + "]");
            }
            const Grid1D& g = table_->grid();
            const std::vector<double>& v = table_->values();
            auto pw = [&](int i) { return std::pow(v[i], e); };
            int ia = g.cell_of(a);
            int ib = g.cell_of(b);
            auto part = [&](double x, int i) {
                double frac = (x - g.node(i)) / g.step;
                double wl = pw(i);
                double wr = pw(i + 1);
                double wx = std::pow(v[i] * (1.0 - frac) + v[i + 1] * frac, e);
                (void)wr;
                return 0.5 * (wl + wx) * (x - g.node(i));
            };
            double acc = 0.0;
            if (ia == ib) {
                return part(b, ia) - part(a, ia);
            }
            acc += 0.5 * (pw(ia) + pw(ia + 1)) * g.step - part(a, ia);
            for (int i = ia + 1; i < ib; ++i) {
                acc += 0.5 * (pw(i) + pw(i + 1)) * g.step;
            }
            acc += part(b, ib);
            return acc;
        }
    }
    return 0.0;
}

std::optional<Interval> WeightSpec::domain() const {
    if (kind_ == Kind::sampled) return table_->grid().interval;
    return std::nullopt;
}

namespace {

struct TripleObjective {
    // value at a < b < c; +inf and non-finite handled by caller
    virtual double operator()(double a, double b, double c) const = 0;
    virtual ~TripleObjective() = default;
};

// Shared two-stage triple sweep: all lattice triples on coarse nodes, then
// refine locally around the best triple. Candidate sets are nested, so the
// estimate is monotone non-decreasing in coarse_nodes.
WeightClassReport triple_sweep(const TripleObjective& obj, const WeightSweep& sweep,
                               int coarse_nodes) {
    const double L = sweep.domain.left;
    const double len = sweep.domain.length();
    auto eval_lattice = [&](double lo, double hi, int nn, double best_init,
                            double* ba, double* bb, double* bc) {
        // per-slot best over the a-index, merged in index order (deterministic
        // and identical for serial and parallel execution)
        std::vector<double> slot_val(nn + 1, best_init);
        std::vector<std::pair<int, int>> slot_arg(nn + 1, {-1, -1});
        double step = (hi - lo) / nn;
        detail::for_index(sweep.exec, nn + 1, [&](std::int64_t ia) {
            double best = best_init;
            int bjb = -1, bjc = -1;
            double a = lo + step * ia;
            for (int jb = static_cast<int>(ia) + 1; jb <= nn; ++jb) {
                double b = lo + step * jb;
                for (int jc = jb + 1; jc <= nn; ++jc) {
                    double c = lo + step * jc;
                    double v = obj(a, b, c);
                    if (std::isfinite(v) ? v > best : v == kInf) {
                        best = v;
                        bjb = jb;
                        bjc = jc;
                        if (v == kInf) break;
                    }
                }
                if (best == kInf) break;
            }
            slot_val[ia] = best;
            slot_arg[ia] = {bjb, bjc};
        });
        double best = best_init;
        for (int ia = 0; ia <= nn; ++ia) {
            if (slot_val[ia] > best) {
                best = slot_val[ia];
                *ba = lo + step * ia;
                *bb = lo + step * slot_arg[ia].first;
                *bc = lo + step * slot_arg[ia].second;
            }
        }
        return best;
    };

    double ba = L, bb = L + len / 2, bc = L + len;
    double best = eval_lattice(L, L + len, coarse_nodes, 0.0, &ba, &bb, &bc);
    if (best == kInf) {
        return {kInf, ba, bb, bc, coarse_nodes, true};
    }
    // local refinement: re-sweep a small lattice around the maximizer
    double radius = len / coarse_nodes;
    for (int round = 0; round < sweep.refine_rounds; ++round) {
        double lo = std::max(L, ba - radius);
        double hi = std::min(L + len, bc + radius);
        double na = ba, nb = bb, nc = bc;
        double v = eval_lattice(lo, hi, 48, best, &na, &nb, &nc);
        if (v > best) {
            best = v;
            ba = na;
            bb = nb;
            bc = nc;
        }
        radius /= 8.0;
    }
    WeightClassReport rep;
    rep.constant = best;
    rep.a = ba;
    rep.b = bb;
    rep.c = bc;
    rep.sweep_nodes = coarse_nodes;
    return rep;
}

WeightClassReport with_convergence(const std::function<WeightClassReport(int)>& run,
                                   int coarse_nodes) {
    WeightClassReport base = run(coarse_nodes);
    WeightClassReport fine = run(2 * coarse_nodes);
    double ref = std::max(std::abs(fine.constant), 1e-300);
    fine.converged = std::isfinite(base.constant) && std::isfinite(fine.constant) &&
                     std::abs(fine.constant - base.constant) < 0.05 * ref;
    return fine;
}

std::vector<double> dyadic_ladder(double top, int levels) {
    std::vector<double> hs;
    for (int j = 0; j <= levels; ++j) {
        hs.push_back(top / std::pow(2.0, j));
    }
    return hs;
}

// sup over (x,h) of (1/h) mass(x-h,x,pow) / w(x)^pow  (the M^- ratio)
WeightClassReport minus_maximal_ratio(const WeightSpec& w, double power,
                                      const WeightSweep& sweep, int coarse_nodes) {
    std::vector<double> hs = dyadic_ladder(sweep.domain.length(), sweep.h_levels);
    double step = sweep.domain.length() / coarse_nodes;
    std::vector<double> slot(coarse_nodes + 1, 0.0);
    std::vector<double> slot_h(coarse_nodes + 1, 0.0);
    detail::for_index(sweep.exec, coarse_nodes + 1, [&](std::int64_t i) {
        double x = sweep.domain.left + step * i;
        double wx = std::pow(w.eval(x), power);
        if (!(wx > 0.0) || !std::isfinite(wx)) return;
        double best = 0.0, besth = 0.0;
        for (double h : hs) {
            double m = w.mass(x - h, x, power) / h;
            double r = m / wx;
            if (r > best) {
                best = r;
                besth = h;
            }
        }
        slot[i] = best;
        slot_h[i] = besth;
    });
    WeightClassReport rep;
    for (int i = 0; i <= coarse_nodes; ++i) {
        if (slot[i] > rep.constant) {
            rep.constant = slot[i];
            rep.a = sweep.domain.left + step * i;
            rep.b = slot_h[i];
        }
    }
    rep.sweep_nodes = coarse_nodes;
    return rep;
}

} // namespace

WeightClassReport ap_plus_constant(const WeightSpec& w, double p, const WeightSweep& sweep) {
    if (!(p >= 1.0)) throw parameter_error("ap_plus_constant: require p >= 1");
    auto run = [&](int nodes) {
        if (p == 1.0) {
            return minus_maximal_ratio(w, 1.0, sweep, nodes);
        }
        double pprime = p / (p - 1.0);
        struct Obj : TripleObjective {
            const WeightSpec* w;
            double p, dual;
            double operator()(double a, double b, double c) const override {
                double m1 = w->mass(a, b, 1.0);
                double m2 = w->mass(b, c, 1.0 - dual);
                if (m2 == kInf || m1 == kInf) return kInf;
                return std::pow(c - a, -p) * m1 * std::pow(m2, p - 1.0);
            }
        } obj;
        obj.w = &w;
        obj.p = p;
        obj.dual = pprime;
        return triple_sweep(obj, sweep, nodes);
    };
    return with_convergence(run, sweep.coarse_nodes);
}

WeightClassReport apq_plus_constant(const WeightSpec& w, double p, double q,
                                    const WeightSweep& sweep) {
    if (!(p >= 1.0) || !(q > p)) throw parameter_error("apq_plus_constant: require 1 <= p < q");
    double alpha = 1.0 / p - 1.0 / q;
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw parameter_error("apq_plus_constant: require 0 < 1/p - 1/q < 1");
    }
    auto run = [&](int nodes) {
        if (p == 1.0) {
            return minus_maximal_ratio(w, q, sweep, nodes);
        }
        double pprime = p / (p - 1.0);
        struct Obj : TripleObjective {
            const WeightSpec* w;
            double q, pprime, alpha;
            double operator()(double a, double b, double c) const override {
                double m1 = w->mass(a, b, q);
                double m2 = w->mass(b, c, -pprime);
                if (m1 == kInf || m2 == kInf) return kInf;
                return std::pow(c - a, alpha - 1.0) * std::pow(m1, 1.0 / q) *
                       std::pow(m2, 1.0 / pprime);
            }
        } obj;
        obj.w = &w;
        obj.q = q;
        obj.pprime = pprime;
        obj.alpha = alpha;
        return triple_sweep(obj, sweep, nodes);
    };
    return with_convergence(run, sweep.coarse_nodes);
}

WeightClassReport one_sided_doubling_ratio(const WeightSpec& w, const WeightSweep& sweep) {
    auto run = [&](int nodes) {
        std::vector<double> hs = dyadic_ladder(sweep.domain.length(), sweep.h_levels);
        double step = sweep.domain.length() / nodes;
        std::vector<double> slot(nodes + 1, 0.0), slot_h(nodes + 1, 0.0);
        detail::for_index(sweep.exec, nodes + 1, [&](std::int64_t i) {
            double x0 = sweep.domain.left + step * i;
            double best = 0.0, besth = 0.0;
            for (double h : hs) {
                double num = w.mass(x0 - h, x0 + h, 1.0);
                double den = w.mass(x0, x0 + h, 1.0);
                if (!(den > 0.0)) continue;
                double r = num / den;
                if (r > best) {
                    best = r;
                    besth = h;
                }
            }
            slot[i] = best;
            slot_h[i] = besth;
        });
        WeightClassReport rep;
        for (int i = 0; i <= nodes; ++i) {
            if (slot[i] > rep.constant) {
                rep.constant = slot[i];
                rep.a = sweep.domain.left + step * i;
                rep.b = slot_h[i];
            }
        }
        rep.sweep_nodes = nodes;
        return rep;
    };
    return with_convergence(run, sweep.coarse_nodes);
}

DyadicGrowthReport dyadic_growth_check(const WeightSpec& w, double p, std::optional<double> q,
                                       int k_max, const WeightSweep& sweep) {
    if (k_max < 1) throw parameter_error("dyadic_growth_check: k_max must be >= 1");
    double pow_w = 1.0, e = p;
    if (q) {
        pow_w = *q;
        e = (p > 1.0) ? *q : 1.0;
    }
    auto run = [&](int nodes) {
        std::vector<double> hs = dyadic_ladder(sweep.domain.length() / 2.0, sweep.h_levels);
        double step = sweep.domain.length() / nodes;
        DyadicGrowthReport rep;
        rep.exponent = e;
        rep.weight_power = pow_w;
        for (int i = 0; i <= nodes; ++i) {
            double x0 = sweep.domain.left + step * i;
            for (double h : hs) {
                double den = w.mass(x0 - h, x0, pow_w);
                if (!(den > 0.0) || den == kInf) continue;
                for (int k = 1; k <= k_max; ++k) {
                    double twok = std::pow(2.0, k);
                    double num = w.mass(x0 - h - twok * h, x0 - h, pow_w);
                    if (num == kInf) continue;
                    double r = num / (std::pow(2.0, k * e) * den);
                    if (r > rep.sup_ratio) {
                        rep.sup_ratio = r;
                        rep.x0 = x0;
                        rep.h = h;
                        rep.k = k;
                    }
                }
            }
        }
        return rep;
    };
    DyadicGrowthReport base = run(sweep.coarse_nodes);
    DyadicGrowthReport fine = run(2 * sweep.coarse_nodes);
    fine.converged = std::abs(fine.sup_ratio - base.sup_ratio) <
                     0.05 * std::max(std::abs(fine.sup_ratio), 1e-300);
    return fine;
}

EquivalenceReport class_equivalence_check(const WeightSpec& w, double p, double q,
                                          const WeightSweep& sweep) {
    if (!(p > 1.0 && q > p)) throw parameter_error("class_equivalence_check: require 1 < p < q");
    double alpha = 1.0 / p - 1.0 / q;
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw parameter_error("class_equivalence_check: require alpha = 1/p - 1/q in (0,1)");
    }
    EquivalenceReport rep;
    rep.apq = apq_plus_constant(w, p, q, sweep);
    rep.ap_of_power = ap_plus_constant(w.powered(q), q * (1.0 - alpha), sweep);
    rep.both_finite = std::isfinite(rep.apq.constant) && rep.apq.converged &&
                      std::isfinite(rep.ap_of_power.constant) && rep.ap_of_power.converged;
    return rep;
}

} // namespace osm
