#include "osm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace osm {

int Grid1D::cell_of(double x) const {
    int i = static_cast<int>(std::floor((x - interval.left) / step));
    return std::clamp(i, 0, n - 1);
}

SampledFunction::SampledFunction(Grid1D grid, std::vector<double> values, bool compact_support)
    : grid_(grid), values_(std::move(values)), compact_support_(compact_support) {
    if (static_cast<int>(values_.size()) != grid_.n + 1) {
        throw data_error("SampledFunction: expected " + std::to_string(grid_.n + 1) +
                         " values, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw data_error("SampledFunction: non-finite value at node " + std::to_string(i));
        }
    }
    prefix_.assign(values_.size(), 0.0);
    for (int i = 1; i <= grid_.n; ++i) {
        prefix_[i] = prefix_[i - 1] + 0.5 * (values_[i] + values_[i - 1]) * grid_.step;
    }
}

SampledFunction SampledFunction::sample(Grid1D grid, const std::function<double(double)>& fn,
                                        bool compact_support) {
    std::vector<double> v(grid.n + 1);
    for (int i = 0; i <= grid.n; ++i) {
        v[i] = fn(grid.node(i));
    }
    return SampledFunction(grid, std::move(v), compact_support);
}

double SampledFunction::value_at(double x) const {
    const Interval& iv = grid_.interval;
    if (x < iv.left || x > iv.right) {
        if (compact_support_) return 0.0;
        throw parameter_error("SampledFunction::value_at: x outside grid and no compact support");
    }
    if (x == iv.right) return values_.back();
    int i = grid_.cell_of(x);
    double frac = (x - grid_.node(i)) / grid_.step;
    return values_[i] * (1.0 - frac) + values_[i + 1] * frac;
}

double SampledFunction::prefix_at(double x) const {
    const Interval& iv = grid_.interval;
    if (x <= iv.left) return 0.0;
    if (x >= iv.right) return prefix_.back();
    int i = grid_.cell_of(x);
    double frac = (x - grid_.node(i)) / grid_.step;
    double fx = values_[i] * (1.0 - frac) + values_[i + 1] * frac;
    return prefix_[i] + 0.5 * (values_[i] + fx) * (x - grid_.node(i));
}

double integrate(const SampledFunction& f, const Interval& sub) {
    if (!f.grid().interval.contains(sub) && !f.compact_support()) {
        throw parameter_error("integrate: subinterval outside grid and no compact support");
    }
    return f.prefix_at(sub.right) - f.prefix_at(sub.left);
}

namespace detail {

double power_diff(double a, double b, double s) {
    if (b <= 0.0) return std::pow(a, s);
    if (a == b) return 0.0;
    // a^s (1 - (b/a)^s) = -a^s expm1(s log1p((b-a)/a))
    return -std::pow(a, s) * std::expm1(s * std::log1p((b - a) / a));
}

double singular_cell_moment(double f_left, double slope, double A, double B, double a_exp) {
    double j1 = power_diff(A, B, a_exp + 1.0) / (a_exp + 1.0);
    double j2 = power_diff(A, B, a_exp + 2.0) / (a_exp + 2.0);
    return (f_left + slope * A) * j1 - slope * j2;
}

} // namespace detail

double integrate_singular(const SampledFunction& f, double t, double a_exp, bool from_left) {
    if (!(a_exp > -1.0 && a_exp < 0.0)) {
        throw parameter_error("integrate_singular: kernel exponent must lie in (-1,0), got " +
                              std::to_string(a_exp));
    }
    const Grid1D& g = f.grid();
    const Interval& iv = g.interval;
    if (t < iv.left || t > iv.right) {
        throw parameter_error("integrate_singular: t outside the grid");
    }
    const std::vector<double>& v = f.values();
    double acc = 0.0;
    if (from_left) {
        // cells from grid.left up to t; singularity at tau = t
        int last = g.cell_of(t);
        for (int j = 0; j <= last; ++j) {
            double c0 = g.node(j);
            double c1 = std::min(g.node(j + 1), t);
            if (c1 <= c0) break;
            double slope = (v[j + 1] - v[j]) / g.step;
            double A = t - c0;
            double B = t - c1;
            acc += detail::singular_cell_moment(v[j], slope, A, B, a_exp);
        }
    } else {
        // cells from t up to grid.right; singularity at tau = t (left end)
        int first = g.cell_of(t);
        for (int j = first; j < g.n; ++j) {
            double c0 = std::max(g.node(j), t);
            double c1 = g.node(j + 1);
            if (c1 <= c0) continue;
            double slope = (v[j + 1] - v[j]) / g.step;
            // mirrored kernel (tau - t)^a: distances from t
            double A = c1 - t;
            double B = c0 - t;
            // f at the far end of the mirrored cell: f(c1) extended line value
            double f_right = v[j] + slope * (c1 - g.node(j));
            acc += detail::singular_cell_moment(f_right, -slope, A, B, a_exp);
        }
    }
    return acc;
}

SampledFunction resample(const SampledFunction& f, const Grid1D& target) {
    if (f.grid().same_as(target)) {
        return SampledFunction(target, f.values(), f.compact_support());
    }
    if (!f.grid().interval.contains(target.interval) && !f.compact_support()) {
        throw parameter_error("resample: target outside grid and no compact support");
    }
    std::vector<double> v(target.n + 1);
    for (int i = 0; i <= target.n; ++i) {
        v[i] = f.value_at(target.node(i));
    }
    return SampledFunction(target, std::move(v), f.compact_support());
}

SampledFunction load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw data_error("load_csv: cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw data_error("load_csv: empty file " + path.string());
    }
    std::vector<double> ts, vs;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b)) {
            throw data_error("load_csv: malformed row " + std::to_string(row));
        }
        double t, v;
        try {
            t = std::stod(a);
            v = std::stod(b);
        } catch (const std::exception&) {
            throw data_error("load_csv: non-numeric entry at row " + std::to_string(row));
        }
        if (!std::isfinite(t) || !std::isfinite(v)) {
            throw data_error("load_csv: non-finite entry at row " + std::to_string(row));
        }
        if (!ts.empty() && t <= ts.back()) {
            throw data_error("load_csv: t not strictly increasing at row " + std::to_string(row));
        }
        ts.push_back(t);
        vs.push_back(v);
    }
    if (ts.size() < 2) {
        throw data_error("load_csv: need at least two rows");
    }
    double step = ts[1] - ts[0];
    for (std::size_t i = 2; i < ts.size(); ++i) {
        double d = ts[i] - ts[i - 1];
        if (std::abs(d - step) > 1e-9 * std::max(std::abs(step), 1.0)) {
            throw data_error("load_csv: non-uniform spacing at row " + std::to_string(i + 2));
        }
    }
    Grid1D grid(Interval(ts.front(), ts.back()), static_cast<int>(ts.size()) - 1);
    return SampledFunction(grid, std::move(vs));
}

void save_csv(const SampledFunction& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw data_error("save_csv: cannot open " + path.string());
    }
    out << "t,value\n";
    char buf[64];
    for (int i = 0; i <= f.grid().n; ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", f.grid().node(i), f.values()[i]);
        out << buf;
    }
}

} // namespace osm
