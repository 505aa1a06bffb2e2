#include "osm/morrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

namespace osm {

double phi(const WeightSpec& w, double lambda, double theta, double x0, double h, Side side) {
    if (!(h > 0.0)) throw parameter_error("phi: require h > 0");
    double m = side == Side::plus ? w.mass(x0 - h, x0, theta) : w.mass(x0, x0 + h, theta);
    return std::pow(h, lambda - 1.0) * m;
}

namespace {

struct WindowFamily {
    std::vector<double> x0s;
    std::vector<double> hs;
    std::optional<double> clip_T;
};

WindowFamily make_family(const SampledFunction& f, const MorreyParams& params,
                         const SweepOptions& opts) {
    const Interval& iv = f.grid().interval;
    double S = iv.length();
    WindowFamily fam;
    std::set<double, std::greater<double>> ladder;
    if (params.local_T) {
        double T = *params.local_T;
        fam.clip_T = T;
        for (int j = 0; j <= opts.levels; ++j) {
            ladder.insert(T / std::pow(2.0, j));
            ladder.insert(S / std::pow(2.0, j));
        }
        double step = f.grid().step * opts.x0_stride;
        for (double x0 = 0.0; x0 <= T + 1e-12 * T; x0 += step) {
            fam.x0s.push_back(x0);
        }
    } else {
        double D = 3.0 * S;
        for (int j = 0; j <= opts.levels; ++j) {
            ladder.insert(D / std::pow(2.0, j));
            ladder.insert(S / std::pow(2.0, j));
        }
        double step = f.grid().step * opts.x0_stride;
        double lo = iv.left - S;
        int count = static_cast<int>(std::floor(3.0 * S / step + 0.5));
        for (int k = 0; k <= count; ++k) {
            fam.x0s.push_back(lo + k * step);
        }
    }
    fam.hs.assign(ladder.begin(), ladder.end());
    if (fam.x0s.empty() || fam.hs.empty()) {
        throw parameter_error("morrey sweep: empty window family");
    }
    return fam;
}

// trapezoid prefix of |f|^p over f's nodes
struct PowerPrefix {
    const SampledFunction* f;
    double p;
    std::vector<double> prefix;

    PowerPrefix(const SampledFunction& fn, double pp) : f(&fn), p(pp) {
        const std::vector<double>& v = fn.values();
        prefix.assign(v.size(), 0.0);
        double h = fn.grid().step;
        for (std::size_t i = 1; i < v.size(); ++i) {
            prefix[i] = prefix[i - 1] +
                        0.5 * (std::pow(std::abs(v[i]), p) + std::pow(std::abs(v[i - 1]), p)) * h;
        }
    }

    double at(double x) const {
        const Grid1D& g = f->grid();
        if (x <= g.interval.left) return 0.0;
        if (x >= g.interval.right) return prefix.back();
        int i = g.cell_of(x);
        double frac = (x - g.node(i)) / g.step;
        double vi = std::abs(f->values()[i]);
        double vj = std::abs(f->values()[i + 1]);
        double vx = vi * (1.0 - frac) + vj * frac;
        return prefix[i] + 0.5 * (std::pow(vi, p) + std::pow(vx, p)) * (x - g.node(i));
    }

    double over(double a, double b) const { return b <= a ? 0.0 : at(b) - at(a); }
};

struct WindowBest {
    double value = 0.0;
    double x0 = 0.0, h = 0.0;
    double gamma = 0.0;
};

// Superlevel objective over one window: segments of |interpolant| clipped to
// [a,b] (cells split at sign crossings), measure of {|f| >= gamma} evaluated
// with a descending event sweep; returns max over candidate levels of
// gamma^p * m(gamma).
double weak_window_objective(const SampledFunction& f, double a, double b, double p,
                             double* best_gamma) {
    const Grid1D& g = f.grid();
    a = std::max(a, g.interval.left);
    b = std::min(b, g.interval.right);
    *best_gamma = 0.0;
    if (b <= a) return 0.0;
    struct Seg {
        double len, lo, hi;
    };
    std::vector<Seg> segs;
    int ia = g.cell_of(a);
    int ib = g.cell_of(b);
    auto push_piece = [&](double xl, double xr, double vl, double vr) {
        if (xr <= xl) return;
        if (vl < 0.0 || vr < 0.0) {
            if (vl < 0.0 && vr < 0.0) {
                segs.push_back({xr - xl, std::min(-vl, -vr), std::max(-vl, -vr)});
                return;
            }
            // sign crossing: split at the zero of the chord
            double t = vl / (vl - vr);
            double xm = xl + t * (xr - xl);
            segs.push_back({xm - xl, 0.0, std::abs(vl)});
            segs.push_back({xr - xm, 0.0, std::abs(vr)});
            return;
        }
        segs.push_back({xr - xl, std::min(vl, vr), std::max(vl, vr)});
    };
    for (int i = ia; i <= ib; ++i) {
        double xl = std::max(a, g.node(i));
        double xr = std::min(b, g.node(i + 1));
        if (xr <= xl) continue;
        double vl = f.value_at(xl);
        double vr = f.value_at(xr);
        push_piece(xl, xr, vl, vr);
    }
    if (segs.empty()) return 0.0;

    // events sorted by level descending: at hi the segment enters the partial
    // set, at lo it moves to the full set
    struct Ev {
        double level;
        int seg;
        bool enter;
    };
    std::vector<Ev> evs;
    evs.reserve(2 * segs.size());
    for (std::size_t s = 0; s < segs.size(); ++s) {
        evs.push_back({segs[s].hi, static_cast<int>(s), true});
        evs.push_back({segs[s].lo, static_cast<int>(s), false});
    }
    std::sort(evs.begin(), evs.end(), [](const Ev& x, const Ev& y) {
        if (x.level != y.level) return x.level > y.level;
        if (x.enter != y.enter) return x.enter; // enters before exits at equal level
        return x.seg < y.seg;
    });

    double full_len = 0.0; // measure from segments entirely above gamma
    double A = 0.0;        // sum len*hi/(hi-lo) over partial segments
    double B = 0.0;        // sum len/(hi-lo) over partial segments
    double best = 0.0;
    double prev_level = std::numeric_limits<double>::infinity();
    auto measure_at = [&](double gsel) { return full_len + A - B * gsel; };
    auto consider = [&](double gsel) {
        if (!(gsel > 0.0)) return;
        double m = measure_at(gsel);
        if (m <= 0.0) return;
        double v = std::pow(gsel, p) * m;
        if (v > best) {
            best = v;
            *best_gamma = gsel;
        }
    };
    std::size_t k = 0;
    while (k < evs.size()) {
        double level = evs[k].level;
        // interior maximizer of gamma^p (full_len + A - B gamma) on (level, prev_level)
        if (B > 0.0) {
            double gstar = p * (full_len + A) / ((p + 1.0) * B);
            if (gstar > level && gstar < prev_level) consider(gstar);
        }
        while (k < evs.size() && evs[k].level == level) {
            const Seg& s = segs[evs[k].seg];
            if (s.hi == s.lo) {
                // flat segment: jumps straight into the full set at its value
                if (evs[k].enter) full_len += s.len;
            } else if (evs[k].enter) {
                A += s.len * s.hi / (s.hi - s.lo);
                B += s.len / (s.hi - s.lo);
            } else {
                A -= s.len * s.hi / (s.hi - s.lo);
                B -= s.len / (s.hi - s.lo);
                full_len += s.len;
            }
            ++k;
        }
        consider(level);
        prev_level = level;
    }
    return best;
}

NormEstimate run_sweep(const SampledFunction& f, const WeightSpec& w, const MorreyParams& params,
                       const SweepOptions& opts, bool weak) {
    WindowFamily fam = make_family(f, params, opts);
    PowerPrefix pp(f, params.p);
    NormEstimate est;
    est.weak = weak;
    est.sweep_x0_count = static_cast<int>(fam.x0s.size());
    est.sweep_h_count = static_cast<int>(fam.hs.size());
    const double inv_p = 1.0 / params.p;
    for (double h : fam.hs) {
        std::vector<WindowBest> slots(fam.x0s.size());
        detail::for_index(opts.exec, static_cast<std::int64_t>(fam.x0s.size()),
                          [&](std::int64_t i) {
                              double x0 = fam.x0s[i];
                              double ph = phi(w, params.lambda, params.theta, x0, h, params.side);
                              if (!(ph > 0.0) || !std::isfinite(ph)) return;
                              double a = x0;
                              double b = x0 + h;
                              if (fam.clip_T) b = std::min(b, *fam.clip_T);
                              if (b <= a) return;
                              WindowBest wb;
                              wb.x0 = x0;
                              wb.h = h;
                              if (weak) {
                                  double gamma = 0.0;
                                  double obj = weak_window_objective(f, a, b, params.p, &gamma);
                                  wb.value = std::pow(obj / ph, inv_p);
                                  wb.gamma = gamma;
                              } else {
                                  double integral = pp.over(a, b);
                                  if (integral <= 0.0) return;
                                  wb.value = std::pow(integral / ph, inv_p);
                              }
                              slots[i] = wb;
                          });
        for (const WindowBest& wb : slots) {
            if (wb.value > est.value) {
                est.value = wb.value;
                est.argmax_x0 = wb.x0;
                est.argmax_h = wb.h;
                if (weak) est.argmax_gamma = wb.gamma;
            }
        }
    }
    return est;
}

} // namespace

NormEstimate morrey_norm(const SampledFunction& f, const WeightSpec& w,
                         const MorreyParams& params, const SweepOptions& opts) {
    return run_sweep(f, w, params, opts, false);
}

NormEstimate weak_morrey_norm(const SampledFunction& f, const WeightSpec& w,
                              const MorreyParams& params, const SweepOptions& opts) {
    return run_sweep(f, w, params, opts, true);
}

} // namespace osm
