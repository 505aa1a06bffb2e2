#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "osm/errors.hpp"
#include "osm/parallel.hpp"

namespace osm {

/// Open interval (left, right), left < right.
struct Interval {
    double left;
    double right;

    Interval(double l, double r) : left(l), right(r) {
        if (!(l < r)) {
            throw parameter_error("Interval: require left < right, got [" +
                                  std::to_string(l) + ", " + std::to_string(r) + ")");
        }
    }

    double length() const { return right - left; }

    /// lambda*I for I=(x0,x0+h): (x0, x0 + lambda*h).
    Interval dilated(double lambda) const {
        return Interval(left, left + lambda * length());
    }

    /// (lambda*I)^-_- for I=(x0,x0+h): (x0-(lambda+1)h, x0-h).
    Interval left_shadow(double lambda) const {
        double h = length();
        return Interval(left - (lambda + 1.0) * h, left - h);
    }

    bool contains(double x) const { return x >= left && x <= right; }
    bool contains(const Interval& sub) const {
        return sub.left >= left && sub.right <= right;
    }
};

/// Uniform grid with n cells (n+1 nodes including both endpoints).
struct Grid1D {
    Interval interval;
    int n;
    double step;

    Grid1D(Interval iv, int cells) : interval(iv), n(cells), step(iv.length() / cells) {
        if (cells < 1) {
            throw parameter_error("Grid1D: cell count must be positive");
        }
    }

    double node(int i) const { return interval.left + step * i; }

    /// Index of the cell containing x, clamped to [0, n-1].
    int cell_of(double x) const;

    bool same_as(const Grid1D& other) const {
        return interval.left == other.interval.left &&
               interval.right == other.interval.right && n == other.n;
    }
};

/// Real-valued function sampled on a uniform grid; the universal carrier for
/// data (f), weights (omega tables) and solver iterates (u). Values are
/// validated finite on construction. With compact_support set the function is
/// identically zero outside its grid.
class SampledFunction {
public:
    SampledFunction(Grid1D grid, std::vector<double> values, bool compact_support = true);

    static SampledFunction sample(Grid1D grid, const std::function<double(double)>& fn,
                                  bool compact_support = true);

    const Grid1D& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    bool compact_support() const { return compact_support_; }

    /// Piecewise-linear interpolation; zero outside the grid when
    /// compact_support is set, otherwise a parameter_error.
    double value_at(double x) const;

    /// Trapezoid prefix integral from grid.left to x (x clipped to the grid).
    double prefix_at(double x) const;

private:
    Grid1D grid_;
    std::vector<double> values_;
    bool compact_support_;
    std::vector<double> prefix_; // prefix_[i] = trapezoid integral up to node i
};

/// Composite trapezoid of f over sub. Non-grid-aligned endpoints are handled
/// by linear interpolation of f, so the rule is additive over adjacent
/// subintervals and exact for affine f.
double integrate(const SampledFunction& f, const Interval& sub);

/// Product integration of f against the power kernel:
///   from_left:  int_{grid.left}^{t} f(tau) (t - tau)^{a_exp} dtau
///   !from_left: int_{t}^{grid.right} f(tau) (tau - t)^{a_exp} dtau
/// f is replaced by its piecewise-linear interpolant and each cell moment is
/// integrated in closed form, so the endpoint singularity is exact.
/// a_exp must lie in (-1, 0).
double integrate_singular(const SampledFunction& f, double t, double a_exp,
                          bool from_left = true);

/// Linear interpolation of f onto target nodes; bit-identical on equal grids.
SampledFunction resample(const SampledFunction& f, const Grid1D& target);

/// CSV I/O, format: header "t,value", one row per node, strictly increasing t,
/// uniform spacing (relative tolerance 1e-9). Errors carry the row number.
SampledFunction load_csv(const std::filesystem::path& path);
void save_csv(const SampledFunction& f, const std::filesystem::path& path);

namespace detail {

/// a^s - b^s for a >= b >= 0, evaluated без cancellation via expm1/log1p.
double power_diff(double a, double b, double s);

/// Closed-form moment of a linear function over one cell against the kernel
/// (t-tau)^{a_exp} with distances A = t - cell_left >= B = t - cell_right >= 0:
///   int f(tau) (t-tau)^a dtau = (f_left + slope*A) * J1 - slope * J2,
///   J1 = (A^{a+1}-B^{a+1})/(a+1), J2 = (A^{a+2}-B^{a+2})/(a+2).
double singular_cell_moment(double f_left, double slope, double A, double B, double a_exp);

} // namespace detail

} // namespace osm
