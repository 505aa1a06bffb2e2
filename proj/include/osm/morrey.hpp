#pragma once

#include <optional>

#include "osm/grid.hpp"
#include "osm/weights.hpp"

namespace osm {

enum class Side { plus, minus };

inline const char* side_name(Side s) { return s == Side::plus ? "plus" : "minus"; }

/// Which one-sided weighted Morrey norm is meant: (p, lambda, theta, side)
/// on the whole line, or the local variant on (0,T).
struct MorreyParams {
    double p = 1.0;
    double lambda = 0.0;
    double theta = 1.0;
    Side side = Side::plus;
    std::optional<double> local_T;

    MorreyParams() = default;
    MorreyParams(double p_, double lambda_, double theta_, Side side_,
                 std::optional<double> local_T_ = std::nullopt)
        : p(p_), lambda(lambda_), theta(theta_), side(side_), local_T(local_T_) {
        if (!(p >= 1.0)) throw parameter_error("MorreyParams: require 1 <= p");
        if (!(lambda >= 0.0 && lambda < 1.0)) {
            throw parameter_error("MorreyParams: require 0 <= lambda < 1");
        }
        if (!(theta >= 1.0)) throw parameter_error("MorreyParams: require 1 <= theta");
        if (local_T && !(*local_T > 0.0)) {
            throw parameter_error("MorreyParams: local horizon T must be positive");
        }
    }
};

/// A norm value together with the maximizing window, so suprema are auditable.
struct NormEstimate {
    double value = 0.0;
    double argmax_x0 = 0.0;
    double argmax_h = 0.0;
    bool weak = false;
    std::optional<double> argmax_gamma;
    int sweep_x0_count = 0;
    int sweep_h_count = 0;
};

/// Window-family controls: dyadic h ladders (enlarged domain and support)
/// crossed with grid-aligned x0 candidates.
struct SweepOptions {
    int levels = 10;
    int x0_stride = 1;
    Exec exec = Exec::par;
};

/// The normalizer Phi^side(x0,h) = h^{lambda-1} * int omega^theta over
/// (x0-h, x0) for side=plus and (x0, x0+h) for side=minus.
double phi(const WeightSpec& w, double lambda, double theta, double x0, double h, Side side);

/// sup over windows of (Phi^side(x0,h)^{-1} int_{(x0,x0+h)} |f|^p)^{1/p};
/// local domains intersect the window with (0,T). f is extended by zero
/// outside its grid.
NormEstimate morrey_norm(const SampledFunction& f, const WeightSpec& w,
                         const MorreyParams& params, const SweepOptions& opts = {});

/// Weak variant: sup over windows and levels gamma of
/// (Phi^{-1} gamma^p |{x in window : |f(x)| >= gamma}|)^{1/p}, the superlevel
/// measure taken of the piecewise-linear interpolant. Level candidates are the
/// sampled |f| values in the window, the window-endpoint values and the
/// per-bracket analytic maximizer of gamma^p * m(gamma).
NormEstimate weak_morrey_norm(const SampledFunction& f, const WeightSpec& w,
                              const MorreyParams& params, const SweepOptions& opts = {});

} // namespace osm
