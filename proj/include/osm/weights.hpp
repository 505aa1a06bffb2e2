#pragma once

#include <memory>
#include <optional>
#include <string>

#include "osm/grid.hpp"

namespace osm {

/// A positive weight: a named closed form (constant, e^x, |x|^delta) or a
/// sampled table. Closed forms integrate exactly at any power; sampled tables
/// evaluate by linear interpolation and integrate by trapezoid on their grid.
/// powered(s) represents omega^s without losing the closed form.
class WeightSpec {
public:
    enum class Kind { constant, exponential, power, sampled };

    static WeightSpec constant(double c);
    static WeightSpec exponential();
    static WeightSpec power(double delta);
    static WeightSpec sampled(SampledFunction table);

    /// Registry names: const:<c>, exp, pow:<delta>, file:<path.csv>.
    static WeightSpec parse(const std::string& spec);

    Kind kind() const { return kind_; }
    std::string name() const;

    /// omega^s as a weight (composes with the existing exponent).
    WeightSpec powered(double s) const;

    double eval(double x) const;

    /// int_a^b omega(x)^s dx, exact for closed forms; +infinity when the
    /// power-weight exponent makes the integral diverge across 0.
    double mass(double a, double b, double s = 1.0) const;

    /// Domain the weight can be evaluated/integrated on (whole line for
    /// closed forms, the table interval for sampled weights).
    std::optional<Interval> domain() const;

private:
    WeightSpec() = default;
    Kind kind_ = Kind::constant;
    double c_ = 1.0;      // constant value
    double delta_ = 0.0;  // power-weight exponent
    double outer_ = 1.0;  // weight is base^outer_
    std::shared_ptr<const SampledFunction> table_;
};

/// Result of a weight-class sweep: the empirical constant, the maximizing
/// configuration and a refinement flag (estimate moved < 5% when the candidate
/// grid was last refined).
struct WeightClassReport {
    double constant = 0.0;
    double a = 0.0, b = 0.0, c = 0.0; // maximizing triple (a,b) = (x0,h) for pair sweeps
    int sweep_nodes = 0;
    bool converged = false;
};

struct WeightSweep {
    Interval domain{-2.0, 2.0};
    int coarse_nodes = 128;   // stage-1 candidate nodes
    int refine_rounds = 2;    // local refinement rounds around the best triple
    int h_levels = 20;        // dyadic h ladder depth for pair sweeps
    Exec exec = Exec::par;
};

/// A_p^+ constant: p>1: sup_{a<b<c} (c-a)^{-p} (int_a^b w)(int_b^c w^{1-p'})^{p-1};
/// p=1: sup over (x,h) of (M^- w)(x)/w(x).
WeightClassReport ap_plus_constant(const WeightSpec& w, double p, const WeightSweep& sweep = {});

/// A_{(p,q)}^+ constant: p>1: sup (c-a)^{alpha-1}(int_a^b w^q)^{1/q}(int_b^c w^{-p'})^{1/p'}
/// with alpha = 1/p - 1/q; p=1: sup (M^- w^q)/w^q.
WeightClassReport apq_plus_constant(const WeightSpec& w, double p, double q,
                                    const WeightSweep& sweep = {});

/// sup over (x0,h) of int_{x0-h}^{x0+h} w / int_{x0}^{x0+h} w.
WeightClassReport one_sided_doubling_ratio(const WeightSpec& w, const WeightSweep& sweep = {});

/// sup over (x0,h,k<=k_max) of int_{x0-h-2^k h}^{x0-h} w^pow / (2^{k e} int_{x0-h}^{x0} w^pow)
/// with (pow,e) selected per case: no q -> (1,p); q and p>1 -> (q,q); q and p=1 -> (q,1).
struct DyadicGrowthReport {
    double sup_ratio = 0.0;
    double x0 = 0.0, h = 0.0;
    int k = 0;
    double exponent = 0.0;     // e used
    double weight_power = 1.0; // pow used
    bool converged = false;
};
DyadicGrowthReport dyadic_growth_check(const WeightSpec& w, double p, std::optional<double> q,
                                       int k_max, const WeightSweep& sweep = {});

/// Paired finiteness check: apq(w,p,q) alongside ap(w^q, q(1-alpha)).
struct EquivalenceReport {
    WeightClassReport apq;
    WeightClassReport ap_of_power;
    bool both_finite = false;
};
EquivalenceReport class_equivalence_check(const WeightSpec& w, double p, double q,
                                          const WeightSweep& sweep = {});

} // namespace osm
