#include "osm/operators.hpp"

#include <algorithm>
#include <cmath>

namespace osm {

namespace {

double sinc(double u) {
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

std::vector<double> abs_prefix(const SampledFunction& f) {
    const std::vector<double>& v = f.values();
    std::vector<double> p(v.size(), 0.0);
    double h = f.grid().step;
    for (std::size_t i = 1; i < v.size(); ++i) {
        p[i] = p[i - 1] + 0.5 * (std::abs(v[i]) + std::abs(v[i - 1])) * h;
    }
    return p;
}

double abs_prefix_at(const SampledFunction& f, const std::vector<double>& p, double x) {
    const Grid1D& g = f.grid();
    if (x <= g.interval.left) return 0.0;
    if (x >= g.interval.right) return p.back();
    int i = g.cell_of(x);
    double frac = (x - g.node(i)) / g.step;
    double vi = std::abs(f.values()[i]);
    double vj = std::abs(f.values()[i + 1]);
    double vx = vi * (1.0 - frac) + vj * frac;
    return p[i] + 0.5 * (vi + vx) * (x - g.node(i));
}

Grid1D extended_grid(const Grid1D& g) {
    double S = g.interval.length();
    return Grid1D(Interval(g.interval.left - S, g.interval.right + S), 3 * g.n);
}

} // namespace

KernelSpec KernelSpec::paper_example() {
    KernelSpec k;
    k.kind_ = Kind::paper_example;
    k.support_side_ = Side::minus;
    return k;
}

KernelSpec KernelSpec::sampled(SampledFunction table, Side support_side) {
    KernelSpec k;
    k.kind_ = Kind::sampled;
    k.support_side_ = support_side;
    k.table_ = std::make_shared<SampledFunction>(std::move(table));
    return k;
}

double KernelSpec::eval(double x) const {
    if (support_side_ == Side::minus ? x >= 0.0 : x <= 0.0) return 0.0;
    if (kind_ == Kind::paper_example) {
        double u = std::log(std::abs(x));
        return sinc(u) / x;
    }
    return table_->value_at(x);
}

double maximal(const SampledFunction& f, Side side, double alpha, double x,
               std::span<const double> h_sweep) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw parameter_error("maximal: require alpha in [0,1)");
    }
    std::vector<double> prefix = abs_prefix(f);
    auto window_mass = [&](double h) {
        return side == Side::plus ? abs_prefix_at(f, prefix, x + h) - abs_prefix_at(f, prefix, x)
                                  : abs_prefix_at(f, prefix, x) - abs_prefix_at(f, prefix, x - h);
    };
    double best = 0.0;
    if (!h_sweep.empty()) {
        for (double h : h_sweep) {
            if (!(h > 0.0)) continue;
            double v = std::pow(h, alpha - 1.0) * window_mass(h);
            best = std::max(best, v);
        }
        return best;
    }
    const Grid1D& g = f.grid();
    for (int j = 0; j <= g.n; ++j) {
        double h = side == Side::plus ? g.node(j) - x : x - g.node(j);
        if (!(h > 0.0)) continue;
        double v = std::pow(h, alpha - 1.0) * window_mass(h);
        best = std::max(best, v);
    }
    return best;
}

SampledFunction maximal_function(const SampledFunction& f, Side side, double alpha, Exec exec) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw parameter_error("maximal_function: require alpha in [0,1)");
    }
    Grid1D out = extended_grid(f.grid());
    std::vector<double> prefix = abs_prefix(f);
    const Grid1D& g = f.grid();
    std::vector<double> vals(out.n + 1, 0.0);
    detail::for_index(exec, out.n + 1, [&](std::int64_t k) {
        double x = out.node(static_cast<int>(k));
        double best = 0.0;
        for (int j = 0; j <= g.n; ++j) {
            double h = side == Side::plus ? g.node(j) - x : x - g.node(j);
            if (!(h > 0.0)) continue;
            double mass = side == Side::plus
                              ? abs_prefix_at(f, prefix, x + h) - abs_prefix_at(f, prefix, x)
                              : abs_prefix_at(f, prefix, x) - abs_prefix_at(f, prefix, x - h);
            double v = std::pow(h, alpha - 1.0) * mass;
            if (v > best) best = v;
        }
        vals[k] = best;
    });
    return SampledFunction(out, std::move(vals));
}

namespace detail {

double power_kernel_sum(const SampledFunction& f, double x, double a_exp, Side side,
                        bool absolute_values) {
    const Grid1D& g = f.grid();
    const std::vector<double>& v = f.values();
    auto val = [&](int i) { return absolute_values ? std::abs(v[i]) : v[i]; };
    double acc = 0.0;
    if (side == Side::plus) {
        for (int j = 0; j < g.n; ++j) {
            double c0 = std::max(g.node(j), x);
            double c1 = g.node(j + 1);
            if (c1 <= c0) continue;
            double slope = (val(j + 1) - val(j)) / g.step;
            double A = c1 - x;
            double B = c0 - x;
            double f_right = val(j) + slope * (c1 - g.node(j));
            acc += singular_cell_moment(f_right, -slope, A, B, a_exp);
        }
    } else {
        for (int j = 0; j < g.n; ++j) {
            double c0 = g.node(j);
            double c1 = std::min(g.node(j + 1), x);
            if (c1 <= c0) continue;
            double slope = (val(j + 1) - val(j)) / g.step;
            double A = x - c0;
            double B = x - c1;
            acc += singular_cell_moment(val(j), slope, A, B, a_exp);
        }
    }
    return acc;
}

} // namespace detail

double weyl_integral(const SampledFunction& f, FractionalOrder alpha, Side side, double x) {
    return detail::power_kernel_sum(f, x, alpha.alpha - 1.0, side, false);
}

SampledFunction weyl_function(const SampledFunction& f, FractionalOrder alpha, Side side,
                              Exec exec) {
    Grid1D out = extended_grid(f.grid());
    std::vector<double> vals(out.n + 1, 0.0);
    detail::for_index(exec, out.n + 1, [&](std::int64_t k) {
        vals[k] = weyl_integral(f, alpha, side, out.node(static_cast<int>(k)));
    });
    return SampledFunction(out, std::move(vals));
}

SampledFunction rl_integral(const SampledFunction& f, FractionalOrder alpha, Exec exec) {
    const Grid1D& g = f.grid();
    const std::vector<double>& v = f.values();
    const double s = alpha.alpha - 1.0;
    const double h = g.step;
    const double inv_gamma = 1.0 / std::tgamma(alpha.alpha);
    // stable tables D1[m] = m^{s+1} - (m-1)^{s+1}, D2 likewise for s+2
    std::vector<double> K1(g.n + 1, 0.0), K2(g.n + 1, 0.0);
    const double h1 = std::pow(h, s + 1.0) / (s + 1.0);
    const double h2 = std::pow(h, s + 2.0) / (s + 2.0);
    for (int m = 1; m <= g.n; ++m) {
        double d1 = (m == 1) ? 1.0 : -std::pow(m, s + 1.0) * std::expm1((s + 1.0) * std::log1p(-1.0 / m));
        double d2 = (m == 1) ? 1.0 : -std::pow(m, s + 2.0) * std::expm1((s + 2.0) * std::log1p(-1.0 / m));
        K1[m] = d1 * h1;
        K2[m] = d2 * h2;
    }
    std::vector<double> out(g.n + 1, 0.0);
    detail::for_index(exec, g.n, [&](std::int64_t idx) {
        int i = static_cast<int>(idx) + 1;
        double acc = 0.0;
        for (int j = 0; j < i; ++j) {
            int m = i - j;
            double slope = (v[j + 1] - v[j]) / h;
            acc += (v[j] + slope * (m * h)) * K1[m] - slope * K2[m];
        }
        out[i] = acc * inv_gamma;
    });
    return SampledFunction(g, std::move(out), f.compact_support());
}

SampledFunction rl_derivative(const SampledFunction& f, FractionalOrder alpha, Exec exec) {
    const Grid1D& g = f.grid();
    if (g.n < 8) throw parameter_error("rl_derivative: grid too coarse (need n >= 8)");
    SampledFunction g1 = rl_integral(f, FractionalOrder(1.0 - alpha.alpha), exec);
    const std::vector<double>& w = g1.values();
    const double h = g.step;
    std::vector<double> d(g.n + 1, 0.0);
    d[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h);
    for (int i = 1; i < g.n; ++i) {
        d[i] = (w[i + 1] - w[i - 1]) / (2.0 * h);
    }
    d[g.n] = (3.0 * w[g.n] - 4.0 * w[g.n - 1] + w[g.n - 2]) / (2.0 * h);
    return SampledFunction(g, std::move(d), f.compact_support());
}

double one_sided_singular(const SampledFunction& f, const KernelSpec& K, double x, double eps) {
    const Grid1D& g = f.grid();
    if (!(eps >= g.step)) {
        throw parameter_error("one_sided_singular: eps below the grid step is unresolvable");
    }
    double start = std::max(x + eps, g.interval.left);
    double end = g.interval.right;
    if (start >= end) return 0.0;
    auto w = [&](double y) { return K.eval(x - y) * f.value_at(y); };
    int j0 = g.cell_of(start);
    double acc = 0.0;
    double prev_y = start;
    double prev_w = w(start);
    for (int j = j0 + 1; j <= g.n; ++j) {
        double y = g.node(j);
        if (y <= prev_y) continue;
        double wy = w(y);
        acc += 0.5 * (prev_w + wy) * (y - prev_y);
        prev_y = y;
        prev_w = wy;
    }
    return acc;
}

double kernel_cancellation_integral(const KernelSpec& K, double a, double b) {
    if (!(a > 0.0 && b > a)) {
        throw parameter_error("kernel_cancellation_integral: require 0 < a < b");
    }
    if (K.kind() == KernelSpec::Kind::paper_example) {
        // substitution u = log|x| turns the integral over (-b,-a) into
        // -int_{log a}^{log b} sinc(u) du; composite Simpson
        double u1 = std::log(a);
        double u2 = std::log(b);
        int panels = std::max(64, static_cast<int>(std::ceil(std::abs(u2 - u1) * 128.0)));
        panels += panels % 2;
        double hu = (u2 - u1) / panels;
        double acc = sinc(u1) + sinc(u2);
        for (int i = 1; i < panels; ++i) {
            acc += sinc(u1 + i * hu) * (i % 2 == 1 ? 4.0 : 2.0);
        }
        return -acc * hu / 3.0;
    }
    // sampled kernel: trapezoid over the table restricted to a < |x| < b
    double lo = K.support_side() == Side::minus ? -b : a;
    double hi = K.support_side() == Side::minus ? -a : b;
    int steps = 4096;
    double hh = (hi - lo) / steps;
    double acc = 0.5 * (K.eval(lo) + K.eval(hi));
    for (int i = 1; i < steps; ++i) {
        acc += K.eval(lo + i * hh);
    }
    return acc * hh;
}

OczkReport oczk_check(const KernelSpec& K, double a_min, double b_max, int sweep_n) {
    if (!(a_min > 0.0 && b_max > a_min)) {
        throw parameter_error("oczk_check: require 0 < a_min < b_max");
    }
    OczkReport rep;
    double u_lo = std::log(a_min);
    double u_hi = std::log(b_max);
    double sgn = K.support_side() == Side::minus ? -1.0 : 1.0;
    for (int i = 0; i <= sweep_n; ++i) {
        double u = u_lo + (u_hi - u_lo) * i / sweep_n;
        double x = sgn * std::exp(u);
        rep.size_sup = std::max(rep.size_sup, std::abs(x * K.eval(x)));
    }
    int pairs = 48;
    for (int i = 0; i < pairs; ++i) {
        double ua = u_lo + (u_hi - u_lo) * i / pairs;
        for (int j = i + 1; j <= pairs; ++j) {
            double ub = u_lo + (u_hi - u_lo) * j / pairs;
            double c = std::abs(kernel_cancellation_integral(K, std::exp(ua), std::exp(ub)));
            rep.cancellation_sup = std::max(rep.cancellation_sup, c);
        }
    }
    int xs = std::max(16, sweep_n / 8);
    for (int i = 0; i <= xs; ++i) {
        double u = u_lo + (u_hi - u_lo) * i / xs;
        double x = sgn * std::exp(u);
        for (int m = 2; m <= 10; ++m) {
            for (double ysign : {-1.0, 1.0}) {
                double y = ysign * std::abs(x) * std::pow(2.0, -m);
                double num = std::abs(K.eval(x - y) - K.eval(x)) * x * x / std::abs(y);
                rep.hormander_sup = std::max(rep.hormander_sup, num);
            }
        }
    }
    return rep;
}

MajorantValue size_majorant(const SampledFunction& f, double alpha, double x) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw parameter_error("size_majorant: require alpha in [0,1)");
    }
    MajorantValue out;
    if (alpha > 0.0) {
        out.value = detail::power_kernel_sum(f, x, alpha - 1.0, Side::plus, true);
        return out;
    }
    const Grid1D& g = f.grid();
    double start = x;
    if (x >= g.interval.left - g.step) {
        start = x + g.step;
        out.truncation = g.step;
    }
    start = std::max(start, g.interval.left);
    if (start >= g.interval.right) return out;
    auto w = [&](double y) { return std::abs(f.value_at(y)) / (y - x); };
    double prev_y = start;
    double prev_w = w(start);
    double acc = 0.0;
    for (int j = g.cell_of(start) + 1; j <= g.n; ++j) {
        double y = g.node(j);
        if (y <= prev_y) continue;
        double wy = w(y);
        acc += 0.5 * (prev_w + wy) * (y - prev_y);
        prev_y = y;
        prev_w = wy;
    }
    out.value = acc;
    return out;
}

double mean_value(const SampledFunction& f, double t, double x) {
    if (!(t >= f.grid().step)) {
        throw parameter_error("mean_value: averaging length below the grid step");
    }
    return (f.prefix_at(x + t) - f.prefix_at(x)) / t;
}

} // namespace osm
