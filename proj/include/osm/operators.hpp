#pragma once

#include <span>
#include <vector>

#include "osm/grid.hpp"
#include "osm/morrey.hpp"

namespace osm {

struct FractionalOrder {
    double alpha;
    explicit FractionalOrder(double a) : alpha(a) {
        if (!(a > 0.0 && a < 1.0)) {
            throw parameter_error("FractionalOrder: require alpha in (0,1), got " +
                                  std::to_string(a));
        }
    }
};

/// One-sided Calderon-Zygmund kernel: the closed-form example
/// K(x) = sin(log|x|)/(x log|x|) on (-inf,0), or a sampled table.
class KernelSpec {
public:
    enum class Kind { paper_example, sampled };

    static KernelSpec paper_example();
    static KernelSpec sampled(SampledFunction table, Side support_side);

    Kind kind() const { return kind_; }
    Side support_side() const { return support_side_; }

    /// Exactly zero outside the support side.
    double eval(double x) const;

private:
    KernelSpec() = default;
    Kind kind_ = Kind::paper_example;
    Side support_side_ = Side::minus; // minus = negative axis
    std::shared_ptr<const SampledFunction> table_;
};

/// One-sided (fractional) maximal value at x: max over the h sweep of
/// h^{alpha-1} int over (x,x+h) [plus] or (x-h,x) [minus] of |f|.
/// An empty sweep uses every window ending at a grid node.
double maximal(const SampledFunction& f, Side side, double alpha, double x,
               std::span<const double> h_sweep = {});

/// maximal evaluated at every node of the support enlarged by one support
/// length per side (f extended by zero).
SampledFunction maximal_function(const SampledFunction& f, Side side, double alpha,
                                 Exec exec = Exec::par);

/// Weyl fractional integral I^+_alpha f(x) = int_x^inf f(y)(y-x)^{alpha-1} dy
/// (mirrored for minus), truncated to the compact support.
double weyl_integral(const SampledFunction& f, FractionalOrder alpha, Side side, double x);

SampledFunction weyl_function(const SampledFunction& f, FractionalOrder alpha, Side side,
                              Exec exec = Exec::par);

/// Riemann-Liouville integral on f's grid (origin at the grid's left edge):
/// out(t) = (1/Gamma(alpha)) int_0^t f(tau) (t-tau)^{alpha-1} dtau, out(0)=0.
SampledFunction rl_integral(const SampledFunction& f, FractionalOrder alpha,
                            Exec exec = Exec::par);

/// D^alpha = d/dt I^{1-alpha}: the discrete I^{1-alpha} differentiated by
/// central differences (second-order one-sided stencils at the endpoints).
SampledFunction rl_derivative(const SampledFunction& f, FractionalOrder alpha,
                              Exec exec = Exec::par);

/// eps-truncated one-sided singular integral int_{x+eps}^inf K(x-y) f(y) dy.
double one_sided_singular(const SampledFunction& f, const KernelSpec& K, double x, double eps);

/// Signed int_{a<|x|<b} K(x) dx.
double kernel_cancellation_integral(const KernelSpec& K, double a, double b);

struct OczkReport {
    double cancellation_sup = 0.0;
    double size_sup = 0.0;
    double hormander_sup = 0.0;
};

/// Empirical suprema for the cancellation, size and Hormander conditions over
/// log-spaced sweeps of (a,b), x and (x,y).
OczkReport oczk_check(const KernelSpec& K, double a_min, double b_max, int sweep_n = 512);

struct MajorantValue {
    double value = 0.0;
    double truncation = 0.0; // inner truncation radius used (alpha = 0 inside support)
};

/// Size-condition majorant S^+_alpha f(x) = int |f(y)| (y-x)^{alpha-1} dy over
/// the support; for alpha = 0 with x inside the support the integral is
/// truncated at one grid step (recorded in the result).
MajorantValue size_majorant(const SampledFunction& f, double alpha, double x);

/// Sliding average M_t f(x) = (1/t) int_x^{x+t} f, zero-extended.
double mean_value(const SampledFunction& f, double t, double x);

namespace detail {

/// int f(y) |y - x|^{a_exp} dy over the support cells on the given side of x,
/// product integration, no domain checks (x may lie outside the grid).
double power_kernel_sum(const SampledFunction& f, double x, double a_exp, Side side,
                        bool absolute_values);

} // namespace detail

} // namespace osm
